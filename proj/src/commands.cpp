// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#include "tlg/commands.hpp"

#include <chrono>
#include <optional>
#include <functional>
#include <map>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "tlg/annular.hpp"
#include "tlg/errors.hpp"
#include "tlg/hamiltonian.hpp"
#include "tlg/loopgas.hpp"
#include "tlg/modular.hpp"
#include "tlg/report.hpp"
#include "tlg/structure.hpp"
#include "tlg/tl.hpp"

namespace tlg {

using nlohmann::json;

SurfaceLattice parse_lattice(const std::string& spec) {
  static const std::regex re(R"((torus|disk|tri):(\d+)x(\d+))");
  std::smatch m;
  if (!std::regex_match(spec, m, re)) fail(Err::ConfigInvalid, "lattice spec '" + spec + "' is not kind:WxH");
  int w = std::stoi(m[2]), h = std::stoi(m[3]);
  if (m[1] == "torus") return SurfaceLattice::square_torus(w, h);
  if (m[1] == "disk") return SurfaceLattice::square_disk(w, h);
  return SurfaceLattice::triangular_torus(w, h);
}

Model parse_model(const std::string& name) {
  if (name == "h0") return Model::H0;
  if (name == "hprime") return Model::HPrime;
  if (name == "ring") return Model::RingExchange;
  fail(Err::ConfigInvalid, "unknown model '" + name + "' (h0, hprime, ring)");
}

namespace {

// request access with typed defaults
struct Req {
  json j;
  template <class T>
  T get(const char* k, T def) const {
    if (!j.contains(k) || j[k].is_null()) return def;
    try {
      return j[k].get<T>();
    } catch (const json::exception&) {
      fail(Err::ConfigInvalid, std::string("field '") + k + "' has the wrong type");
    }
  }
  template <class T>
  T need(const char* k) const {
    if (!j.contains(k)) fail(Err::ConfigInvalid, std::string("missing field '") + k + "'");
    return get<T>(k, T{});
  }
  bool has(const char* k) const { return j.contains(k) && !j[k].is_null(); }
};

int level(const Req& r) {
  int ell = r.need<int>("ell");
  if (ell < 1) fail(Err::ConfigInvalid, "ell must be >= 1");
  return ell;
}

// backend choice: exact only where the special field backend is offered
Ring ring_for(const Req& r, int ell, std::string* name) {
  std::string b = r.get<std::string>("backend", ell <= 3 ? "exact" : "float");
  *name = b;
  if (b == "exact") {
    if (ell > 3) fail(Err::ConfigInvalid, "exact backend is limited to ell <= 3");
    return Ring::special(ell);
  }
  if (b == "float") return Ring::floating_special(ell);
  fail(Err::ConfigInvalid, "backend must be exact or float");
}

size_t positive_cap(const Req& r, const char* k, size_t def) {
  long v = r.get<long>(k, static_cast<long>(def));
  if (v <= 0) fail(Err::ConfigInvalid, std::string(k) + " must be positive");
  return static_cast<size_t>(v);
}

std::string matrix_csv(const std::vector<std::vector<std::string>>& m) {
  std::ostringstream o;
  for (const auto& row : m) {
    for (size_t j = 0; j < row.size(); ++j) o << (j ? "," : "") << row[j];
    o << '\n';
  }
  return o.str();
}

using Handler = std::function<void(const Req&, ReportBundle&, std::string& csv)>;

// ---- tl ----

void tl_diagrams(const Req& r, ReportBundle& B, std::string&) {
  int m = r.need<int>("m"), n = r.need<int>("n");
  if (m < 0 || n < 0 || (m + n) % 2 || m + n > 24) fail(Err::ConfigInvalid, "need m, n >= 0, m + n even and <= 24");
  auto ds = enumerate_diagrams(m, n);
  json j;
  j["m"] = m;
  j["n"] = n;
  j["count"] = ds.size();
  j["catalan"] = catalan((m + n) / 2);
  if (ds.size() <= 1000) {
    j["diagrams"] = json::array();
    for (const auto& d : ds) j["diagrams"].push_back(d.str());
  }
  B.add("diagrams", j.dump());
}

void tl_jw(const Req& r, ReportBundle& B, std::string&) {
  int k = r.need<int>("k");
  if (k < 1 || k > 10) fail(Err::ConfigInvalid, "k must be in 1..10");
  Ring ring = Ring::generic();
  std::string bname = "generic";
  if (r.has("ell")) ring = ring_for(r, level(r), &bname);
  const Morphism& p = jones_wenzl(ring, k);
  json j;
  j["k"] = k;
  j["terms"] = json::array();
  for (const auto& [d, c] : p.sorted_terms()) j["terms"].push_back({{"diagram", d.str()}, {"coeff", c.str()}});
  j["trace"] = markov_trace(p).str();
  j["idempotent"] = compose(p, p) == p;
  B.set_backend(bname);
  B.add("jones_wenzl", j.dump());
}

void tl_gram(const Req& r, ReportBundle& B, std::string& csv) {
  int n = r.need<int>("n");
  if (n < 0 || n > 7) fail(Err::ConfigInvalid, "n must be in 0..7");
  Ring ring = Ring::generic();
  std::string bname;
  if (r.has("d")) {
    ring = Ring::floating(r.get<double>("d", 0.0));
    bname = "float";
  } else {
    ring = ring_for(r, level(r), &bname);
  }
  auto g = gram_matrix(ring, n, n);
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : g) {
    cells.emplace_back();
    for (const auto& x : row) cells.back().push_back(x.str());
  }
  csv = matrix_csv(cells);
  size_t rk = rank(ring, g);
  json j;
  j["n"] = n;
  j["size"] = g.size();
  j["rank"] = rk;
  j["corank"] = g.size() - rk;
  B.set_backend(bname);
  if (ring.backend == Backend::Float) B.set_tolerance(kFloatRelTol);
  B.add("gram", j.dump());
}

void tl_radical(const Req& r, ReportBundle& B, std::string&) {
  int n = r.need<int>("n"), ell = level(r);
  if (n < 1 || n > 7) fail(Err::ConfigInvalid, "n must be in 1..7");
  auto rad = radical_basis(n, ell);
  json j;
  j["n"] = n;
  j["ell"] = ell;
  j["radical_dim"] = rad.size();
  if (n == ell + 1 && rad.size() == 1) {
    // one-dimensional radical at grade ell+1 should be spanned by p_{ell+1}
    Ring ring = Ring::special(ell);
    const Morphism& p = jones_wenzl(ring, n);
    auto basis = enumerate_diagrams(n, n);
    RowSpace rs(ring, basis.size());
    rs.insert(coordinates(rad[0], basis));
    j["spanned_by_jones_wenzl"] = rs.contains(coordinates(p, basis));
  }
  B.set_backend("exact");
  B.add("radical", j.dump());
}

void tl_ideal(const Req& r, ReportBundle& B, std::string&) {
  int ell = level(r), nmax = r.get<int>("n_max", ell + 3);
  if (ell > 3 || nmax > 7) fail(Err::ConfigInvalid, "ideal check supports ell <= 3 and n_max <= 7");
  B.set_backend("exact");
  B.add("ideal", verify_ideal_theorem(ell, nmax, true).json());
}

// ---- annulus ----

void annulus_closure(const Req& r, ReportBundle& B, std::string&) {
  int k = r.need<int>("k");
  if (k < 1 || k > 8) fail(Err::ConfigInvalid, "k must be in 1..8");
  auto poly = annular_closure(jones_wenzl(Ring::generic(), k));
  json j;
  j["k"] = k;
  j["closure"] = poly.str();
  j["coeffs"] = json::array();
  for (const auto& c : poly.coeffs()) j["coeffs"].push_back(c.str());
  B.set_backend("generic");
  B.add("closure", j.dump());
}

void annulus_report(const Req& r, ReportBundle& B, std::string&) {
  int ell = level(r), cap = r.get<int>("grade_cap", ell + 2);
  if (ell > 5 || cap > 8) fail(Err::ConfigInvalid, "annular reports support ell <= 5 and grade_cap <= 8");
  B.set_backend("generic");
  B.set_tolerance(1e-9);
  B.add("annulus", annular_report_json(ell, cap));
}

// ---- tables ----

void table_fig02(const Req& r, ReportBundle& B, std::string& csv) {
  int ellmax = r.get<int>("ell_max", 6);
  if (ellmax < 1 || ellmax > 40) fail(Err::ConfigInvalid, "ell_max must be in 1..40");
  auto t = level_table(ellmax);
  csv = level_table_csv(t);
  json j = json::array();
  for (const auto& L : t)
    j.push_back({{"ell", L.ell},
                 {"dim_torus", L.even_pair_count},
                 {"labels", L.label_count},
                 {"color_reversing", L.color_reversing_count},
                 {"specific_heat", L.specific_heat},
                 {"even_singular", L.even_singular},
                 {"nonsingular_utmf", L.nonsingular_utmf}});
  B.set_backend("float");
  B.set_tolerance(1e-9);
  B.add("fig02", json{{"rows", j}}.dump());
  B.flag("S-matrix normalized with sqrt(2/(ell+2)); the 2/sqrt(ell+2) prefactor gives S^2 = 2I");
  B.flag("even restriction of S is singular for every even ell; nonsingular_utmf resolves the fixed point when the "
         "simple current has trivial twist");
}

void table_smatrix(const Req& r, ReportBundle& B, std::string& csv) {
  int ell = level(r);
  if (ell > 40) fail(Err::ConfigInvalid, "ell must be <= 40");
  std::string c = r.get<std::string>("convention", "unshifted");
  SConvention conv = c == "shifted" ? SConvention::Shifted : SConvention::Unshifted;
  if (c != "shifted" && c != "unshifted") fail(Err::ConfigInvalid, "convention must be shifted or unshifted");
  auto S = s_matrix(ell, conv);
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : S) {
    cells.emplace_back();
    for (double x : row) {
      std::ostringstream o;
      o.precision(17);
      o << x;
      cells.back().push_back(o.str());
    }
  }
  csv = matrix_csv(cells);
  B.set_backend("float");
  B.set_tolerance(1e-9);
  B.add("smatrix", json{{"ell", ell}, {"convention", c}, {"size", S.size()}, {"rank", numeric_rank(S)}}.dump());
}

// ---- lattice ----

std::vector<Config> seeds_of(const Req& r, const SurfaceLattice& lat) {
  std::vector<Config> out;
  for (const auto& s : r.get<std::vector<std::string>>("seeds", {})) out.push_back(parse_config_hex(s, lat.sites()));
  return out;
}

Model model_of(const Req& r, const SurfaceLattice& lat) {
  return parse_model(r.get<std::string>("model", lat.bond_model() ? "hprime" : "h0"));
}

void lattice_build(const Req& r, ReportBundle& B, std::string&) {
  auto lat = parse_lattice(r.need<std::string>("lattice"));
  json j;
  j["lattice"] = lat.describe();
  j["sites"] = lat.sites();
  j["euler_characteristic"] = lat.euler_characteristic();
  if (lat.bond_model()) {
    j["vertices"] = lat.vertex_count();
    j["faces"] = lat.face_count();
    auto [p, d] = hprime_term_counts(lat);
    j["terms"] = {{"box", p}, {"dual_box", d}};
  } else {
    j["terms"] = {{"plaque", lat.sites()}};
  }
  B.add("lattice", j.dump());
}

void lattice_components(const Req& r, ReportBundle& B, std::string& csv) {
  auto lat = parse_lattice(r.need<std::string>("lattice"));
  Model m = model_of(r, lat);
  json j;
  j["lattice"] = lat.describe();
  j["model"] = model_name(m);
  auto seeds = seeds_of(r, lat);
  std::ostringstream o;
  if (seeds.empty()) {
    o << "seed,size\n";  // partition does not track amplitude consistency
    auto P = partition_components(lat, m);
    j["components"] = P.count();
    std::map<uint32_t, uint32_t> hist;
    for (auto s : P.sizes) hist[s]++;
    for (auto [size, n] : hist) j["size_histogram"].push_back({size, n});
    for (uint32_t c = 0; c < P.count(); ++c) o << config_hex(P.seeds[c], lat.sites()) << ',' << P.sizes[c] << '\n';
  } else {
    o << "seed,size,consistent\n";
    size_t cap = positive_cap(r, "component_cap", kDefaultComponentCap);
    for (Config s : seeds) {
      auto c = explore_component(lat, s, m, cap);
      j["explored"].push_back({{"seed", config_hex(s, lat.sites())}, {"size", c.states.size()}, {"consistent", c.consistent}});
      o << config_hex(s, lat.sites()) << ',' << c.states.size() << ',' << (c.consistent ? "yes" : "no") << '\n';
    }
  }
  csv = o.str();
  B.add("components", j.dump());
}

void lattice_kernel(const Req& r, ReportBundle& B, std::string&) {
  auto lat = parse_lattice(r.need<std::string>("lattice"));
  int ell = level(r);
  Model m = model_of(r, lat);
  size_t cap = positive_cap(r, "state_cap", kDefaultStateCap);
  std::string solver = r.get<std::string>("solver", "both");
  if (solver != "both" && solver != "propagate" && solver != "dense")
    fail(Err::ConfigInvalid, "solver must be both, propagate or dense");
  auto cs = build_system(lat, m, ell, seeds_of(r, lat), cap);
  json j;
  j["lattice"] = lat.describe();
  j["model"] = model_name(m);
  j["ell"] = ell;
  j["states"] = cs.states.size();
  j["rows"] = cs.rows.size();
  std::optional<PropagatedKernel> kp;
  if (solver != "dense") {
    kp = kernel_propagate(cs);
    j["dim_propagate"] = kp->dim;
  }
  if (solver != "propagate") {
    auto kd = kernel_dense(cs);
    j["dim_dense"] = kd.dim;
    j["dense_blocks"] = kd.dense_blocks;
    j["iterative_blocks"] = kd.iterative_blocks;
    j["max_residual"] = kd.max_residual;
    if (kp && kd.dim != kp->dim) {
      B.add("kernel", j.dump());
      fail(Err::OracleMismatch, "propagated and dense kernel dimensions differ: " + std::to_string(kp->dim) + " vs " +
                                    std::to_string(kd.dim));
    }
  }
  if (kp && m == Model::HPrime && r.get<bool>("containment", false)) {
    auto ring = build_ring_exchange(lat, seeds_of(r, lat), cap);
    j["contained_in_ring_exchange_kernel"] = kernel_contained(cs, *kp, ring);
  }
  if (kp && !lat.bond_model()) {
    auto sp = swap_split(lat, cs, *kp);
    j["swap_plus"] = sp.plus;
    j["swap_minus"] = sp.minus;
  }
  B.set_backend(QDelta::supported(ell) ? "exact+float" : "float");
  B.set_tolerance(1e-8);
  B.add("kernel", j.dump());
}

void lattice_joint(const Req& r, ReportBundle& B, std::string&) {
  auto lat = parse_lattice(r.need<std::string>("lattice"));
  int ell = level(r);
  auto rep = joint_kernel(lat, ell, r.get<bool>("single_window", false));
  B.set_backend("exact+float");
  B.set_tolerance(1e-8);
  B.add("joint_kernel", rep.json());
  if (rep.dim_exact != rep.dim_float)
    fail(Err::OracleMismatch, "exact and float joint kernels differ: " + std::to_string(rep.dim_exact) + " vs " +
                                  std::to_string(rep.dim_float));
}

void lattice_energy(const Req& r, ReportBundle& B, std::string&) {
  auto lat = parse_lattice(r.need<std::string>("lattice"));
  int ell = level(r);
  auto cs = build_system(lat, model_of(r, lat), ell, {}, positive_cap(r, "state_cap", kDefaultStateCap));
  B.set_backend(QDelta::supported(ell) ? "exact" : "float");
  B.add("energy", uniform_state_energy(cs).json());
}

void lattice_pauli(const Req& r, ReportBundle& B, std::string&) {
  int ell = level(r);
  B.set_backend("exact");
  B.add("pauli", pauli_expand_check(ell).json());
}

// ---- gas ----

void gas_params(const Req& r, ReportBundle& B, std::string&) {
  auto g = potts_params(level(r));
  B.set_backend(g.ring.name());
  B.add("params", g.json());
}

void gas_exact(const Req& r, ReportBundle& B, std::string&) {
  auto lat = parse_lattice(r.need<std::string>("lattice"));
  int ell = level(r);
  auto g = potts_params(ell);
  B.set_backend(g.ring.name());
  B.add("params", g.json());
  B.add("fk_census", fk_census(lat, g).json());
  B.add("self_duality", self_duality_check(lat, ell).json());
  auto X = exact_cluster_law(lat, g);
  B.add("cluster_law", json{{"mean_loops", X.mean_loops}, {"mean_clusters", X.mean_clusters}}.dump());
  if (r.get<bool>("foam", false)) {
    size_t cap = positive_cap(r, "state_cap", kDefaultStateCap);
    Config seed = 0;
    auto cs = build_hprime(lat, ell, {seed}, cap);
    auto k = kernel_propagate(cs);
    B.add("gibbs_law", gibbs_law_check(lat, cs, k).json());
    B.add("potts_match", potts_match(lat, cs, k, 0, g).json());
  }
}

void gas_sample(const Req& r, ReportBundle& B, std::string& csv) {
  auto lat = parse_lattice(r.need<std::string>("lattice"));
  int ell = level(r);
  auto g = potts_params(ell);
  SampleOptions o;
  o.sweeps = positive_cap(r, "sweeps", 10000);
  o.burn_in = r.get<uint64_t>("burn_in", o.sweeps / 100);
  o.seed = r.get<uint64_t>("seed", 1);
  o.chains = r.get<int>("chains", 1);
  o.threads = r.get<int>("threads", 0);
  o.trace_every = r.get<uint64_t>("trace_every", std::max<uint64_t>(1, o.sweeps / 1000));
  bool tv = r.get<bool>("tv", lat.sites() <= 22);
  o.tally_configs = tv;
  auto R = metropolis_sample(lat, g, o);
  csv = R.csv();
  B.set_backend("float");
  B.set_seed(o.seed);
  B.add("params", g.json());
  B.add("sample", R.json());
  if (tv) {
    auto X = exact_cluster_law(lat, g);
    double d = tv_distance(R.tallies, R.tally_total, X.prob);
    B.add("oracle", json{{"tv_distance", d},
                         {"exact_mean_loops", X.mean_loops},
                         {"loops_z", R.se_loops > 0 ? (R.mean_loops - X.mean_loops) / R.se_loops : 0.0}}
                        .dump());
  }
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"tl.diagrams", tl_diagrams},       {"tl.jw", tl_jw},
      {"tl.gram", tl_gram},               {"tl.radical", tl_radical},
      {"tl.ideal", tl_ideal},             {"annulus.closure", annulus_closure},
      {"annulus.ideal", annulus_report},  {"annulus.beta", annulus_report},
      {"table.fig02", table_fig02},       {"table.smatrix", table_smatrix},
      {"lattice.build", lattice_build},   {"lattice.components", lattice_components},
      {"lattice.kernel", lattice_kernel}, {"lattice.joint-kernel", lattice_joint},
      {"lattice.energy", lattice_energy}, {"lattice.pauli", lattice_pauli},
      {"gas.params", gas_params},         {"gas.exact", gas_exact},
      {"gas.sample", gas_sample},
  };
  return h;
}

}  // namespace

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : handlers()) out.push_back(k);
  return out;
}

CommandOutput run_command(const std::string& command, const std::string& request) {
  auto it = handlers().find(command);
  if (it == handlers().end()) fail(Err::ConfigInvalid, "unknown command '" + command + "'");
  Req r;
  try {
    r.j = request.empty() ? json::object() : json::parse(request);
  } catch (const json::exception& e) {
    fail(Err::ConfigInvalid, std::string("request is not JSON: ") + e.what());
  }
  if (!r.j.is_object()) fail(Err::ConfigInvalid, "request must be a JSON object");
  auto t0 = std::chrono::steady_clock::now();
  ReportBundle B(command);
  CommandOutput out;
  it->second(r, B, out.csv);
  if (r.get<bool>("timestamps", true))
    B.set_wall_clock(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  out.json = B.json();
  return out;
}

}  // namespace tlg
