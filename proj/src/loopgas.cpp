// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#include "tlg/loopgas.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "tlg/errors.hpp"

namespace tlg {

GibbsModel potts_params(int ell) {
  if (ell < 1) fail(Err::ConfigInvalid, "level must be >= 1");
  GibbsModel g;
  g.ell = ell;
  g.exact = QDelta::supported(ell);
  g.ring = g.exact ? Ring::special(ell) : Ring::floating_special(ell);
  g.d = g.ring.d();
  g.n = g.d * g.d;
  g.q = g.n * g.n;
  // sqrt(q) = n since d > 0
  g.p = g.n / (g.ring.one() + g.n);
  g.d_f = g.d.to_double();
  g.n_f = g.n.to_double();
  g.q_f = g.q.to_double();
  g.p_f = g.p.to_double();
  if (ell == 3) {
    std::ostringstream os;
    os.precision(6);
    os << "q at level 3 is d^4 = (7+3sqrt5)/2 = " << g.q_f << "; the value 5.6 quoted for this level does not match";
    g.flags.push_back(os.str());
  }
  return g;
}

std::string GibbsModel::json() const {
  nlohmann::json j;
  j["ell"] = ell;
  j["backend"] = ring.name();
  j["exact"] = exact;
  j["d"] = d.str();
  j["n"] = n.str();
  j["q"] = q.str();
  j["p"] = p.str();
  j["d_float"] = d_f;
  j["n_float"] = n_f;
  j["q_float"] = q_f;
  j["p_float"] = p_f;
  if (!flags.empty()) j["flags"] = flags;
  return j.dump();
}

// ---- measurement ----

Distribution measurement_distribution(const ConstraintSystem& cs, const PropagatedKernel& k, uint32_t comp) {
  if (comp >= k.dim) fail(Err::IndexOutOfRange, "no kernel component " + std::to_string(comp));
  Ring r = QDelta::supported(cs.ell) ? Ring::special(cs.ell) : Ring::floating_special(cs.ell);
  Scalar n = r.d() * r.d();
  Distribution D;
  std::vector<size_t> idx;
  int emin = INT32_MAX;
  for (size_t i = 0; i < cs.states.size(); ++i)
    if (k.comp[i] == comp) {
      idx.push_back(i);
      emin = std::min(emin, k.exponent[i]);
    }
  // |d^e|^2 = n^e; tally per exponent, normalize once
  std::map<int, long> count;
  for (size_t i : idx) count[k.exponent[i] - emin]++;
  std::map<int, Scalar> w;
  Scalar total = r.zero();
  for (auto [e, c] : count) {
    w[e] = pow(n, e, r);
    total += w[e] * r.integer(c);
  }
  std::map<int, Scalar> pr;
  for (auto& [e, x] : w) pr[e] = x / total;
  for (size_t i : idx) {
    D.states.push_back(cs.states[i]);
    const Scalar& p = pr[k.exponent[i] - emin];
    D.prob.push_back(p);
    D.prob_f.push_back(p.to_double());
  }
  return D;
}

Distribution measurement_distribution(const ConstraintSystem& cs, const std::vector<std::pair<uint32_t, double>>& v) {
  Distribution D;
  double nrm = 0;
  for (auto [i, a] : v) nrm += a * a;
  if (!(nrm > 0)) fail(Err::ConfigInvalid, "zero vector");
  for (auto [i, a] : v) {
    if (i >= cs.states.size()) fail(Err::IndexOutOfRange, "vector index outside the state space");
    D.states.push_back(cs.states[i]);
    D.prob.push_back(Scalar(a * a / nrm));
    D.prob_f.push_back(a * a / nrm);
  }
  return D;
}

GibbsLawReport gibbs_law_check(const SurfaceLattice& lat, const ConstraintSystem& cs, const PropagatedKernel& k) {
  GibbsLawReport R;
  R.ell = cs.ell;
  R.components = k.dim;
  R.states = cs.states.size();
  Ring r = QDelta::supported(cs.ell) ? Ring::special(cs.ell) : Ring::floating_special(cs.ell);
  Scalar n = r.d() * r.d();
  std::vector<int> loops(cs.states.size());
  for (size_t i = 0; i < cs.states.size(); ++i) loops[i] = loop_count(lat, cs.states[i]);
  // exact probabilities per (component, exponent)
  std::vector<Distribution> dist;
  std::vector<std::map<int, Scalar>> pr(k.dim);
  for (uint32_t c = 0; c < k.dim; ++c) {
    auto D = measurement_distribution(cs, k, c);
    size_t t = 0;
    for (size_t i = 0; i < cs.states.size(); ++i)
      if (k.comp[i] == c) pr[c].emplace(k.exponent[i], D.prob[t++]);
  }
  // the ratio test is exact; cache it by (component, exponents, loop difference)
  std::map<std::tuple<uint32_t, int, int, int>, bool> seen;
  for (const auto& row : cs.rows) {
    if (k.comp[row.u] != k.comp[row.v]) continue;
    ++R.pairs;
    uint32_t c = k.comp[row.u];
    int dl = loops[row.v] - loops[row.u];
    auto key = std::make_tuple(c, k.exponent[row.u], k.exponent[row.v], dl);
    auto it = seen.find(key);
    if (it == seen.end()) {
      Scalar ratio = pr[c].at(k.exponent[row.v]) / pr[c].at(k.exponent[row.u]);
      it = seen.emplace(key, ratio == pow(n, dl, r)).first;
    }
    if (!it->second) ++R.violations;
  }
  return R;
}

std::string GibbsLawReport::json() const {
  nlohmann::json j;
  j["ell"] = ell;
  j["components"] = components;
  j["states"] = states;
  j["pairs"] = pairs;
  j["violations"] = violations;
  j["ok"] = ok();
  return j.dump();
}

// ---- FK weights ----

namespace {

struct Counts {
  int L, C, Cs, E, Es, rp, rm;
  auto key() const { return std::make_tuple(L, C, Cs, E, Es); }
};

Counts counts_of(const SurfaceLattice& lat, Config s) {
  auto w = extract_walls(lat, s);
  Counts c{w.loops, w.clusters, w.dual_clusters, w.edges, w.dual_edges, w.wrap_rank, w.dual_wrap_rank};
  if (!lat.is_torus()) c.Cs -= 1;  // the region holding the exterior is not a dual cluster
  return c;
}

Scalar loop_form(const GibbsModel& g, int L) { return pow(g.n, L, g.ring); }
Scalar cluster_form(const GibbsModel& g, int C, int E, int Es) {
  return pow(g.q, C, g.ring) * pow(g.p, E, g.ring) * pow(g.ring.one() - g.p, Es, g.ring);
}

std::string class_key(const SurfaceLattice& lat, int rp, int rm) {
  if (!lat.is_torus()) return "planar";
  return "r+=" + std::to_string(rp) + ",r-=" + std::to_string(rm);
}

void need_bond_lattice(const SurfaceLattice& lat) {
  if (!lat.bond_model()) fail(Err::ConfigInvalid, "FK weights need a bond lattice, got " + lat.describe());
}

void need_enumerable(const SurfaceLattice& lat) {
  if (lat.sites() > 22) fail(Err::StateSpaceTooLarge, lat.describe() + " is too large to enumerate");
}

}  // namespace

FkWeight fk_weight(const SurfaceLattice& lat, Config s, const GibbsModel& g) {
  need_bond_lattice(lat);
  auto c = counts_of(lat, s);
  FkWeight w;
  w.L = c.L;
  w.C = c.C;
  w.Cstar = c.Cs;
  w.E = c.E;
  w.Estar = c.Es;
  w.wrap_rank = c.rp;
  w.dual_wrap_rank = c.rm;
  w.loop_form = loop_form(g, c.L);
  w.cluster_form = cluster_form(g, c.C, c.E, c.Es);
  return w;
}

std::string FkWeight::json() const {
  nlohmann::json j;
  j["L"] = L;
  j["C"] = C;
  j["C_star"] = Cstar;
  j["E"] = E;
  j["E_star"] = Estar;
  j["wrap_rank"] = wrap_rank;
  j["dual_wrap_rank"] = dual_wrap_rank;
  j["loop_form"] = loop_form.str();
  j["cluster_form"] = cluster_form.str();
  return j.dump();
}

FkCensus fk_census(const SurfaceLattice& lat, const GibbsModel& g) {
  need_bond_lattice(lat);
  need_enumerable(lat);
  FkCensus out;
  out.ell = g.ell;
  out.lattice = lat.describe();
  struct Acc {
    std::set<int> corr;
    std::set<std::tuple<int, int, int, int, int>> tuples;
    size_t count = 0;
  };
  std::map<std::string, Acc> acc;
  Config total = Config(1) << lat.sites();
  for (Config s = 0; s < total; ++s) {
    auto c = counts_of(lat, s);
    auto& a = acc[class_key(lat, c.rp, c.rm)];
    a.corr.insert(c.L - c.C - c.Cs);
    a.tuples.insert(c.key());
    ++a.count;
  }
  out.configs = total;
  for (auto& [key, a] : acc) {
    FkClass k;
    k.key = key;
    k.count = a.count;
    k.identity_holds = a.corr.size() == 1 && (lat.is_torus() || *a.corr.begin() == 0);
    k.correction = *a.corr.begin();
    bool first = true;
    for (auto [L, C, Cs, E, Es] : a.tuples) {
      Scalar r = loop_form(g, L) / cluster_form(g, C, E, Es);
      if (first) {
        k.ratio = r;
        first = false;
      } else if (r != k.ratio) {
        k.single_constant = false;
      }
    }
    out.classes.push_back(k);
  }
  return out;
}

bool FkCensus::ok() const {
  if (classes.empty()) return false;
  for (const auto& c : classes)
    if (!c.identity_holds || !c.single_constant) return false;
  return true;
}

std::string FkCensus::json() const {
  nlohmann::json j;
  j["ell"] = ell;
  j["lattice"] = lattice;
  j["configs"] = configs;
  j["ok"] = ok();
  for (const auto& c : classes) {
    nlohmann::json e;
    e["class"] = c.key;
    e["count"] = c.count;
    e["loop_correction"] = c.correction;
    e["identity_holds"] = c.identity_holds;
    e["single_constant"] = c.single_constant;
    e["ratio"] = c.ratio.str();
    e["ratio_float"] = c.ratio.to_double();
    j["classes"].push_back(e);
  }
  return j.dump();
}

SelfDuality self_duality_check(const SurfaceLattice& lat, int ell) {
  need_bond_lattice(lat);
  need_enumerable(lat);
  SelfDuality out;
  out.ell = ell;
  {
    Ring r = Ring::generic();
    Scalar n = r.d() * r.d();
    Scalar q = n * n;
    Scalar p = n / (r.one() + n);
    Scalar x = p / (r.one() - p);
    out.symbolic = x * x == q;
  }
  GibbsModel g = potts_params(ell);
  // per class: the set of (C, E, C*, E*) tuples, then the swap ratio on each
  std::map<std::string, std::set<std::tuple<int, int, int, int>>> tuples;
  Config total = Config(1) << lat.sites();
  for (Config s = 0; s < total; ++s) {
    auto c = counts_of(lat, s);
    tuples[class_key(lat, c.rp, c.rm)].insert({c.C, c.E, c.Cs, c.Es});
  }
  out.constant_at_p = true;
  out.varies_off_p = false;
  double pf = std::min(0.99, g.p_f * 1.1);
  for (const auto& [key, ts] : tuples) {
    bool first = true;
    Scalar r0;
    double lo = 1e300, hi = -1e300;
    for (auto [C, E, Cs, Es] : ts) {
      Scalar r = cluster_form(g, Cs, Es, E) / cluster_form(g, C, E, Es);
      if (first) {
        r0 = r;
        first = false;
      } else if (r != r0) {
        out.constant_at_p = false;
      }
      double lr = (Cs - C) * std::log(g.q_f) + (Es - E) * (std::log(pf) - std::log1p(-pf));
      lo = std::min(lo, lr);
      hi = std::max(hi, lr);
    }
    if (hi - lo > 1e-9) out.varies_off_p = true;
  }
  return out;
}

std::string SelfDuality::json() const {
  nlohmann::json j;
  j["ell"] = ell;
  j["symbolic"] = symbolic;
  j["constant_at_self_dual_p"] = constant_at_p;
  j["varies_off_self_dual_p"] = varies_off_p;
  return j.dump();
}

PottsMatch potts_match(const SurfaceLattice& lat, const ConstraintSystem& cs, const PropagatedKernel& k, uint32_t comp,
                       const GibbsModel& g) {
  need_bond_lattice(lat);
  if (g.ell != cs.ell) fail(Err::ConfigInvalid, "model and kernel are at different levels");
  auto D = measurement_distribution(cs, k, comp);
  PottsMatch out;
  out.ell = g.ell;
  out.states = D.states.size();
  // ratio depends on the state only through (probability, C, E, E*)
  std::map<std::tuple<int, int, int, int>, Scalar> cache;
  std::set<std::string> classes;
  std::vector<int> exps;
  for (size_t i = 0; i < cs.states.size(); ++i)
    if (k.comp[i] == comp) exps.push_back(k.exponent[i]);
  out.single_constant = true;
  bool first = true;
  for (size_t t = 0; t < D.states.size(); ++t) {
    auto c = counts_of(lat, D.states[t]);
    classes.insert(class_key(lat, c.rp, c.rm));
    auto key = std::make_tuple(exps[t], c.C, c.E, c.Es);
    auto it = cache.find(key);
    if (it != cache.end()) continue;
    Scalar r = D.prob[t] / cluster_form(g, c.C, c.E, c.Es);
    cache.emplace(key, r);
    if (first) {
      out.constant = r;
      first = false;
    } else if (r != out.constant) {
      out.single_constant = false;
    }
  }
  out.classes.assign(classes.begin(), classes.end());
  return out;
}

std::string PottsMatch::json() const {
  nlohmann::json j;
  j["ell"] = ell;
  j["states"] = states;
  j["single_constant"] = single_constant;
  j["constant"] = constant.str();
  j["constant_float"] = constant.to_double();
  j["classes"] = classes;
  return j.dump();
}

// ---- sampler ----

uint64_t CounterRng::next() {
  uint64_t z = seed_ + (++ctr_) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t CounterRng::below(uint64_t n) {
  // rejection keeps it unbiased
  uint64_t lim = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    uint64_t x = next();
    if (x < lim) return x % n;
  }
}

namespace {

int cluster_count(const SurfaceLattice& lat, Config s) {
  std::vector<int> par(lat.vertex_count());
  std::iota(par.begin(), par.end(), 0);
  auto find = [&](int x) {
    while (par[x] != x) x = par[x] = par[par[x]];
    return x;
  };
  int c = lat.vertex_count();
  for (int b = 0; b < lat.sites(); ++b)
    if ((s >> b) & 1) {
      int x = find(lat.bonds()[b].v[0]), y = find(lat.bonds()[b].v[1]);
      if (x != y) {
        par[x] = y;
        --c;
      }
    }
  return c;
}

// u and v joined by + bonds other than `skip`
bool joined(const SurfaceLattice& lat, Config s, int skip, int u, int v, std::vector<int>& mark, int& stamp,
            std::vector<int>& stack) {
  if (u == v) return true;
  ++stamp;
  stack.assign(1, u);
  mark[u] = stamp;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int b : lat.vertex_bonds()[x]) {
      if (b == skip || !((s >> b) & 1)) continue;
      const auto& bd = lat.bonds()[b];
      int y = bd.v[0] == x ? bd.v[1] : bd.v[0];
      if (y == v) return true;
      if (mark[y] != stamp) {
        mark[y] = stamp;
        stack.push_back(y);
      }
    }
  }
  return false;
}

struct Flipper {
  const SurfaceLattice& lat;
  std::vector<int> mark, stack;
  int stamp = 0;
  explicit Flipper(const SurfaceLattice& l) : lat(l), mark(l.vertex_count(), 0) {}
  // (dC, dE) of flipping bond b
  std::pair<int, int> delta(Config s, int b) {
    const auto& bd = lat.bonds()[b];
    bool plus = (s >> b) & 1;
    bool conn = joined(lat, s, b, bd.v[0], bd.v[1], mark, stamp, stack);
    if (plus) return {conn ? 0 : 1, -1};
    return {conn ? 0 : -1, 1};
  }
};

double flip_ratio_value(const GibbsModel& g, int dC, int dE) {
  double x = g.p_f / (1 - g.p_f);
  return std::pow(g.q_f, dC) * std::pow(x, dE);
}

constexpr uint64_t kRecountEvery = 1000;
constexpr int kBatches = 50;

SampleRecord run_chain(const SurfaceLattice& lat, const GibbsModel& g, const SampleOptions& opt, uint64_t seed) {
  SampleRecord R;
  R.seed = seed;
  R.sweeps = opt.sweeps;
  R.burn_in = opt.burn_in;
  CounterRng rng(seed);
  int N = lat.sites();
  Config mask = N == 64 ? ~Config(0) : (Config(1) << N) - 1;
  Config s = rng.next() & mask;
  int C = cluster_count(lat, s);
  Flipper fl(lat);
  // ratio table over (dC, dE) in {-1,0,1} x {-1,1}
  double table[3][2];
  for (int dc = -1; dc <= 1; ++dc)
    for (int de : {-1, 1}) table[dc + 1][de > 0] = flip_ratio_value(g, dc, de);
  if (opt.tally_configs) {
    if (N > 24) fail(Err::StateSpaceTooLarge, "configuration tallies need at most 24 sites");
    R.tallies.assign(size_t(1) << N, 0);
  }
  uint64_t since_recount = 0, acc_window = 0, steps_window = 0;
  uint64_t measured = opt.sweeps;
  uint64_t per_batch = std::max<uint64_t>(1, measured / kBatches);
  std::vector<double> bl, bc;
  double sl = 0, sc = 0;
  uint64_t in_batch = 0;
  double tot_l = 0, tot_c = 0;
  for (uint64_t sw = 0; sw < opt.burn_in + opt.sweeps; ++sw) {
    bool live = sw >= opt.burn_in;
    for (int t = 0; t < N; ++t) {
      int b = t;  // one ordered pass over the bonds per sweep
      auto [dc, de] = fl.delta(s, b);
      double a = table[dc + 1][de > 0];
      double u = rng.uniform();
      ++steps_window;
      if (u < a) {
        s ^= Config(1) << b;
        C += dc;
        ++R.accepted;
        ++acc_window;
        if (++since_recount == kRecountEvery) {
          since_recount = 0;
          ++R.recounts;
          if (cluster_count(lat, s) != C) fail(Err::Internal, "incremental cluster count drifted");
        }
      }
      ++R.steps;
      if (live && opt.tally_configs) {
        ++R.tallies[s];
        ++R.tally_total;
      }
    }
    if (!live) continue;
    int L = loop_count(lat, s);
    tot_l += L;
    tot_c += C;
    sl += L;
    sc += C;
    if (++in_batch == per_batch) {
      bl.push_back(sl / in_batch);
      bc.push_back(sc / in_batch);
      sl = sc = 0;
      in_batch = 0;
    }
    uint64_t k = sw - opt.burn_in + 1;
    if (opt.trace_every && k % opt.trace_every == 0) {
      auto w = extract_walls(lat, s);
      int cs = w.dual_clusters - (lat.is_torus() ? 0 : 1);
      R.trace.push_back({k, L, C, cs, steps_window ? double(acc_window) / double(steps_window) : 0.0});
      acc_window = steps_window = 0;
    }
  }
  R.acceptance = R.steps ? double(R.accepted) / double(R.steps) : 0.0;
  if (measured) {
    R.mean_loops = tot_l / double(measured);
    R.mean_clusters = tot_c / double(measured);
  }
  // batch-means standard errors
  auto se = [](const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double m = std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
    double ss = 0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / double(v.size() - 1) / double(v.size()));
  };
  R.se_loops = se(bl);
  R.se_clusters = se(bc);
  return R;
}

}  // namespace

FlipRatio flip_ratio(const SurfaceLattice& lat, Config s, int bond, const GibbsModel& g) {
  need_bond_lattice(lat);
  if (bond < 0 || bond >= lat.sites()) fail(Err::IndexOutOfRange, "bond " + std::to_string(bond));
  Flipper fl(lat);
  auto [dc, de] = fl.delta(s, bond);
  return {dc, de, flip_ratio_value(g, dc, de)};
}

SampleRecord metropolis_sample(const SurfaceLattice& lat, const GibbsModel& g, const SampleOptions& opt) {
  need_bond_lattice(lat);
  if (lat.sites() > 64) fail(Err::ConfigInvalid, "sampler configurations are limited to 64 bonds");
  if (opt.chains < 1) fail(Err::ConfigInvalid, "chains must be >= 1");
  if (opt.sweeps == 0) fail(Err::ConfigInvalid, "sweeps must be positive");
  std::vector<SampleRecord> parts(opt.chains);
  std::vector<std::exception_ptr> errs(opt.chains);
  int width = opt.threads > 0 ? std::min(opt.threads, opt.chains) : opt.chains;
  for (int c0 = 0; c0 < opt.chains; c0 += width) {
    std::vector<std::thread> pool;
    for (int c = c0; c < std::min(opt.chains, c0 + width); ++c)
      pool.emplace_back([&, c] {
        try {
          parts[c] = run_chain(lat, g, opt, opt.seed + static_cast<uint64_t>(c));
        } catch (...) {
          errs[c] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  // merge in seed order
  SampleRecord R = parts[0];
  R.ell = g.ell;
  R.lattice = lat.describe();
  R.seed = opt.seed;
  R.chains = opt.chains;
  if (opt.chains > 1) {
    double vl = R.se_loops * R.se_loops, vc = R.se_clusters * R.se_clusters;
    double ml = R.mean_loops, mc = R.mean_clusters;
    for (int c = 1; c < opt.chains; ++c) {
      const auto& P = parts[c];
      R.steps += P.steps;
      R.accepted += P.accepted;
      R.recounts += P.recounts;
      R.tally_total += P.tally_total;
      for (size_t i = 0; i < R.tallies.size(); ++i) R.tallies[i] += P.tallies[i];
      ml += P.mean_loops;
      mc += P.mean_clusters;
      vl += P.se_loops * P.se_loops;
      vc += P.se_clusters * P.se_clusters;
      R.trace.insert(R.trace.end(), P.trace.begin(), P.trace.end());
    }
    double k = opt.chains;
    R.mean_loops = ml / k;
    R.mean_clusters = mc / k;
    R.se_loops = std::sqrt(vl) / k;
    R.se_clusters = std::sqrt(vc) / k;
    R.acceptance = R.steps ? double(R.accepted) / double(R.steps) : 0.0;
  }
  return R;
}

std::string SampleRecord::json() const {
  nlohmann::json j;
  j["ell"] = ell;
  j["lattice"] = lattice;
  j["rng"] = "splitmix64-counter";
  j["seed"] = seed;
  j["chains"] = chains;
  j["sweeps"] = sweeps;
  j["burn_in"] = burn_in;
  j["steps"] = steps;
  j["accepted"] = accepted;
  j["acceptance"] = acceptance;
  j["recounts"] = recounts;
  j["mean_loops"] = mean_loops;
  j["se_loops"] = se_loops;
  j["mean_clusters"] = mean_clusters;
  j["se_clusters"] = se_clusters;
  if (tally_total) j["tally_total"] = tally_total;
  return j.dump();
}

std::string SampleRecord::csv() const {
  std::ostringstream os;
  os << "sweep,loops,C,C_star,acceptance\n";
  for (const auto& t : trace) os << t.sweep << ',' << t.loops << ',' << t.C << ',' << t.Cstar << ',' << t.acceptance << '\n';
  return os.str();
}

ExactLaw exact_cluster_law(const SurfaceLattice& lat, const GibbsModel& g) {
  need_bond_lattice(lat);
  need_enumerable(lat);
  Config total = Config(1) << lat.sites();
  ExactLaw X;
  X.prob.resize(total);
  std::vector<int> L(total), C(total);
  double lq = std::log(g.q_f), lp = std::log(g.p_f), lm = std::log1p(-g.p_f);
  double mx = -1e300;
  for (Config s = 0; s < total; ++s) {
    C[s] = cluster_count(lat, s);
    L[s] = loop_count(lat, s);
    int E = __builtin_popcountll(s);
    X.prob[s] = C[s] * lq + E * lp + (lat.sites() - E) * lm;
    mx = std::max(mx, X.prob[s]);
  }
  double z = 0;
  for (auto& w : X.prob) z += (w = std::exp(w - mx));
  for (Config s = 0; s < total; ++s) {
    X.prob[s] /= z;
    X.mean_loops += X.prob[s] * L[s];
    X.mean_clusters += X.prob[s] * C[s];
  }
  return X;
}

double tv_distance(const std::vector<uint64_t>& tallies, uint64_t total, const std::vector<double>& prob) {
  if (tallies.size() != prob.size() || total == 0) fail(Err::ConfigInvalid, "tallies and law differ in size");
  double tv = 0;
  for (size_t i = 0; i < prob.size(); ++i) tv += std::abs(double(tallies[i]) / double(total) - prob[i]);
  return tv / 2;
}

BalanceReport detailed_balance_check(const SurfaceLattice& lat, const GibbsModel& g) {
  need_bond_lattice(lat);
  if (lat.sites() > 16) fail(Err::StateSpaceTooLarge, "detailed balance check is for small patches");
  BalanceReport R;
  Config total = Config(1) << lat.sites();
  std::vector<Scalar> pi(total);
  for (Config s = 0; s < total; ++s) {
    auto c = counts_of(lat, s);
    pi[s] = cluster_form(g, c.C, c.E, c.Es);
  }
  Scalar one = g.ring.one();
  Scalar x = g.p / (one - g.p);
  Flipper fl(lat);
  for (Config s = 0; s < total; ++s)
    for (int b = 0; b < lat.sites(); ++b) {
      Config t = s ^ (Config(1) << b);
      if (t < s) continue;
      ++R.pairs;
      // acceptance from the local rule, exactly
      auto [dc, de] = fl.delta(s, b);
      Scalar r = pow(g.q, dc, g.ring) * pow(x, de, g.ring);
      bool up = r.to_double() >= 1.0;
      Scalar a_st = up ? one : r, a_ts = up ? one / r : one;
      if (pi[s] * a_st != pi[t] * a_ts) ++R.violations;
    }
  return R;
}

}  // namespace tlg
