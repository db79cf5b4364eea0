// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#include "tlg/hamiltonian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_set>

#include "json.hpp"

namespace tlg {

const char* row_tag_name(RowTag t) {
  switch (t) {
    case RowTag::G: return "g";
    case RowTag::H: return "h";
    case RowTag::Box: return "box";
    case RowTag::DualBox: return "dual-box";
    case RowTag::RingExchange: return "ring-exchange";
    case RowTag::Skein: return "skein";
    case RowTag::Synthetic: return "synthetic";
  }
  return "?";
}

size_t ConstraintSystem::index_of(Config s) const {
  auto it = std::lower_bound(states.begin(), states.end(), s);
  return (it != states.end() && *it == s) ? static_cast<size_t>(it - states.begin()) : states.size();
}

std::pair<int, int> hprime_term_counts(const SurfaceLattice& lat) {
  if (!lat.bond_model()) fail(Err::ConfigInvalid, "H' needs a bond lattice");
  int p = 0, d = 0;
  for (size_t f = 0; f < lat.face_bonds().size(); ++f)
    if (static_cast<int>(f) != lat.exterior_face() && lat.face_bonds()[f].size() == 4) p += 4;
  for (const auto& vb : lat.vertex_bonds())
    if (vb.size() == 4) d += 4;
  return {p, d};
}

namespace {

std::vector<Config> state_space(const SurfaceLattice& lat, Model m, const std::vector<Config>& seeds, size_t cap) {
  std::vector<Config> out;
  if (seeds.empty()) {
    if (lat.sites() >= 40 || (size_t(1) << lat.sites()) > cap)
      fail(Err::StateSpaceTooLarge,
           "full state space of " + lat.describe() + " exceeds the cap of " + std::to_string(cap) + " states");
    out.resize(size_t(1) << lat.sites());
    std::iota(out.begin(), out.end(), Config(0));
    return out;
  }
  std::unordered_set<Config> seen;
  for (Config s : seeds) {
    if (seen.count(s)) continue;
    auto c = explore_component(lat, s, m, cap);
    for (Config t : c.states) seen.insert(t);
    if (seen.size() > cap) fail(Err::StateSpaceTooLarge, "seeded components exceed the state cap");
  }
  out.assign(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

RowTag tag_for(Model m, const Move& mv) {
  if (m == Model::H0) return mv.kind == MoveKind::Isotopy ? RowTag::G : RowTag::H;
  if (m == Model::RingExchange) return RowTag::RingExchange;
  return mv.dual ? RowTag::DualBox : RowTag::Box;
}

}  // namespace

ConstraintSystem build_system(const SurfaceLattice& lat, Model m, int ell, const std::vector<Config>& seeds,
                              size_t cap) {
  if (ell < 1) fail(Err::ConfigInvalid, "level must be >= 1");
  if (!model_fits(lat, m)) fail(Err::ConfigInvalid, std::string(model_name(m)) + " does not live on " + lat.describe());
  ConstraintSystem cs;
  cs.model = m;
  cs.ell = ell;
  cs.lattice = lat.describe();
  cs.sites = lat.sites();
  cs.states = state_space(lat, m, seeds, cap);
  if (lat.bond_model()) {
    auto [p, d] = hprime_term_counts(lat);
    cs.primary_terms = p;
    cs.dual_terms = d;
  } else {
    cs.primary_terms = lat.sites();
  }
  for (size_t i = 0; i < cs.states.size(); ++i) {
    Config s = cs.states[i];
    for (const auto& mv : local_moves(lat, s, m)) {
      // each projector once: from the side with fewer loops, or the smaller config
      if (mv.dloops < 0 || (mv.dloops == 0 && mv.partner < s)) continue;
      size_t j = cs.index_of(mv.partner);
      if (j == cs.states.size()) fail(Err::Internal, "move leaves the state space");
      cs.rows.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(j), mv.dloops, tag_for(m, mv), mv.site});
    }
  }
  return cs;
}

ConstraintSystem build_h0(const SurfaceLattice& lat, int ell, const std::vector<Config>& seeds, size_t cap) {
  return build_system(lat, Model::H0, ell, seeds, cap);
}
ConstraintSystem build_hprime(const SurfaceLattice& lat, int ell, const std::vector<Config>& seeds, size_t cap) {
  return build_system(lat, Model::HPrime, ell, seeds, cap);
}
ConstraintSystem build_ring_exchange(const SurfaceLattice& lat, const std::vector<Config>& seeds, size_t cap) {
  return build_system(lat, Model::RingExchange, 1, seeds, cap);
}

// ---- Pauli expansion ----

namespace {
using M16 = std::vector<std::vector<Scalar>>;

M16 zeros16(const Ring& r) { return M16(16, std::vector<Scalar>(16, r.zero())); }

// 2x2 single-bond operators in the basis (|+>, |->)
struct M2 {
  Scalar a[2][2];
};

M16 kron4(const Ring& r, const M2& q0, const M2& rest) {
  M16 out = zeros16(r);
  // bit i of the index = state of bond i, 0 = |+>, 1 = |->
  for (int row = 0; row < 16; ++row)
    for (int col = 0; col < 16; ++col) {
      Scalar v = q0.a[row & 1][col & 1];
      for (int b = 1; b < 4; ++b) v = v * rest.a[(row >> b) & 1][(col >> b) & 1];
      out[row][col] = v;
    }
  return out;
}

bool equal16(const M16& a, const M16& b) {
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      if (a[i][j] != b[i][j]) return false;
  return true;
}

// (alpha I + beta sz + gamma sx) on bond 0
M2 pauli(const Ring& r, const Scalar& alpha, const Scalar& beta, const Scalar& gamma) {
  M2 m;
  m.a[0][0] = alpha + beta;
  m.a[1][1] = alpha - beta;
  m.a[0][1] = gamma;
  m.a[1][0] = gamma;
  (void)r;
  return m;
}
}  // namespace

PauliCheck pauli_expand_check(int ell) {
  Ring r = Ring::special(ell);
  Scalar d = r.d(), one = r.one(), zero = r.zero(), d2 = d * d;
  Scalar s16 = one / r.integer(16), s8 = one / r.integer(8);
  PauliCheck pc;
  pc.ell = ell;
  // outer products of the vectors: bond 0 first, counterclockwise
  auto outer = [&](int marked_state, int rest_state) {
    // v = |marked, rest, rest, rest> - (1/d) |rest, rest, rest, rest>
    std::vector<Scalar> v(16, zero);
    int restbits = rest_state ? 0b1110 : 0;
    v[restbits | marked_state] = v[restbits | marked_state] + one;
    v[restbits | rest_state] = v[restbits | rest_state] - one / d;
    M16 o = zeros16(r);
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) o[i][j] = v[i] * v[j];
    return o;
  };
  M16 box = outer(1, 0), dual = outer(0, 1);
  M2 plus_proj = pauli(r, one, one, zero);   // I + sz
  M2 minus_proj = pauli(r, one, -one, zero); // I - sz
  // printed expanded form (the same bracket on both lines)
  M2 expanded = pauli(r, s16 + s16 / d2, -s16 + s16 / d2, -s8 / d);
  pc.box_vector_is_printed_expanded = equal16(box, kron4(r, expanded, plus_proj));
  pc.dual_vector_is_printed_expanded = equal16(dual, kron4(r, expanded, minus_proj));
  Scalar a = s16 * (d2 + one) / d2;
  pc.box_vector_is_printed_simplified =
      equal16(box, kron4(r, pauli(r, a, s16 * (one - d2) / d2, -s16 * r.integer(2) / d2), plus_proj));
  pc.dual_vector_is_printed_simplified =
      equal16(dual, kron4(r, pauli(r, a, s16 * (d2 - one) / d2, -s16 * r.integer(2) / d2), minus_proj));
  pc.box_vector_is_corrected =
      equal16(box, kron4(r, pauli(r, a, s16 * (one - d2) / d2, -s16 * r.integer(2) / d), plus_proj));
  pc.dual_vector_is_corrected =
      equal16(dual, kron4(r, pauli(r, a, s16 * (d2 - one) / d2, -s16 * r.integer(2) / d), minus_proj));
  // orthogonal projector: idempotent after dividing by |v|^2
  Scalar n2 = one + one / d2;
  M16 p = box;
  for (auto& row : p)
    for (auto& x : row) x = x / n2;
  M16 pp = zeros16(r);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      for (int k = 0; k < 16; ++k) pp[i][j] += p[i][k] * p[k][j];
  pc.projector_is_scaled_outer = equal16(p, pp) && !equal16(box, pp);
  return pc;
}

std::string PauliCheck::json() const {
  nlohmann::json j;
  j["ell"] = ell;
  j["printed_simplified"] = {{"box", box_vector_is_printed_simplified}, {"dual", dual_vector_is_printed_simplified}};
  j["printed_expanded"] = {{"box", box_vector_is_printed_expanded}, {"dual", dual_vector_is_printed_expanded}};
  j["corrected_sx_coefficient"] = {{"box", box_vector_is_corrected}, {"dual", dual_vector_is_corrected}};
  j["display_is_unnormalized_outer_product"] = projector_is_scaled_outer;
  if (!printed_ok())
    j["flags"] = {"printed Pauli polynomials differ from the projectors: the sx coefficient is -(2/d), not -(2/d^2), "
                  "and the displays are |v><v| before normalization"};
  return j.dump();
}

// ---- kernels ----

PropagatedKernel kernel_propagate(const ConstraintSystem& cs) {
  if (!cs.extra.empty()) fail(Err::ConfigInvalid, "propagation needs two-term rows only");
  size_t n = cs.states.size();
  PropagatedKernel K;
  K.ell = cs.ell;
  std::vector<std::vector<std::pair<uint32_t, int>>> g(n);
  for (const auto& r : cs.rows) {
    g[r.u].push_back({r.v, r.k});
    g[r.v].push_back({r.u, -r.k});
  }
  const uint32_t none = UINT32_MAX;
  K.comp.assign(n, none);
  K.exponent.assign(n, 0);
  // d = 1 exactly at level 1, so every cycle is consistent there
  bool d_is_one = cs.ell == 1;
  std::deque<uint32_t> q;
  for (uint32_t s0 = 0; s0 < n; ++s0) {
    if (K.comp[s0] != none) continue;
    uint32_t id = static_cast<uint32_t>(K.sizes.size());
    K.sizes.push_back(0);
    K.comp[s0] = id;
    q.assign(1, s0);
    while (!q.empty()) {
      uint32_t u = q.front();
      q.pop_front();
      ++K.sizes[id];
      for (auto [v, k] : g[u]) {
        if (K.comp[v] == none) {
          K.comp[v] = id;
          K.exponent[v] = K.exponent[u] + k;
          q.push_back(v);
        } else if (!d_is_one && K.exponent[v] != K.exponent[u] + k) {
          fail(Err::InconsistentCycle, "ratio cycle through state " + std::to_string(cs.states[u]) +
                                           " in component " + std::to_string(id) + " does not close");
        }
      }
    }
  }
  K.dim = static_cast<uint32_t>(K.sizes.size());
  return K;
}

namespace {

struct BlockRows {
  std::vector<uint32_t> states;  // global indices
  std::vector<std::vector<std::pair<uint32_t, double>>> rows;  // local indices
  bool two_term = true;
};

double dpow(double d, int k) { return std::pow(d, k); }

// larger two-term blocks go to CGLS; dense SVD cost grows as rows * n^2
constexpr size_t kDenseBlockStates = 600;

// CGLS for min ||A x|| with x[0] = 1; returns x
std::vector<double> cgls_pinned(const BlockRows& B, size_t n, double* rel_res, double* smax) {
  // A = [a0 | A1]; solve min ||A1 y + a0||
  size_t m = B.rows.size();
  auto apply = [&](const std::vector<double>& x, std::vector<double>& out) {  // out = A x
    out.assign(m, 0.0);
    for (size_t i = 0; i < m; ++i)
      for (auto [j, c] : B.rows[i]) out[i] += c * x[j];
  };
  auto applyT = [&](const std::vector<double>& y, std::vector<double>& out) {  // out = A^T y
    out.assign(n, 0.0);
    for (size_t i = 0; i < m; ++i)
      for (auto [j, c] : B.rows[i]) out[j] += c * y[i];
  };
  // largest singular value by power iteration on A^T A
  // non-constant start: the constant vector is the kernel of ratio-1 rows
  std::vector<double> v(n), Av, w;
  for (size_t j = 0; j < n; ++j) v[j] = 1.0 + 0.5 * std::sin(1.0 + 0.7 * static_cast<double>(j));
  double lam = 0;
  for (int it = 0; it < 60; ++it) {
    double nv = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (nv == 0) break;
    for (auto& x : v) x /= nv;
    apply(v, Av);
    applyT(Av, w);
    lam = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
    v = w;
  }
  *smax = std::sqrt(lam);
  std::vector<double> x(n, 0.0);
  x[0] = 1.0;
  std::vector<double> r;
  apply(x, r);
  for (auto& t : r) t = -t;  // residual of A1 y = -a0 at y = 0
  std::vector<double> s, p, q;
  applyT(r, s);
  s[0] = 0;
  p = s;
  double gamma = std::inner_product(s.begin(), s.end(), s.begin(), 0.0);
  double g0 = gamma;
  for (int it = 0; it < 20000 && gamma > 1e-30 * g0 && gamma > 0; ++it) {
    apply(p, q);
    double qq = std::inner_product(q.begin(), q.end(), q.begin(), 0.0);
    if (qq == 0) break;
    double alpha = gamma / qq;
    for (size_t j = 0; j < n; ++j) x[j] += alpha * p[j];
    for (size_t i = 0; i < m; ++i) r[i] -= alpha * q[i];
    applyT(r, s);
    s[0] = 0;
    double gn = std::inner_product(s.begin(), s.end(), s.begin(), 0.0);
    double beta = gn / gamma;
    gamma = gn;
    for (size_t j = 0; j < n; ++j) p[j] = s[j] + beta * p[j];
  }
  std::vector<double> ax;
  apply(x, ax);
  double nr = std::sqrt(std::inner_product(ax.begin(), ax.end(), ax.begin(), 0.0));
  double nx = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
  *rel_res = nr / nx;
  return x;
}

}  // namespace

DenseKernel kernel_dense(const ConstraintSystem& cs, double rel_tol) {
  size_t n = cs.states.size();
  if (n > kDefaultStateCap) fail(Err::StateSpaceTooLarge, "dense kernel limited to " + std::to_string(kDefaultStateCap) + " states");
  double d = QDelta::delta_value(cs.ell);
  // blocks = connected components of the row hypergraph
  std::vector<uint32_t> par(n);
  std::iota(par.begin(), par.end(), 0u);
  auto find = [&](uint32_t x) {
    while (par[x] != x) x = par[x] = par[par[x]];
    return x;
  };
  for (const auto& r : cs.rows) par[find(r.u)] = find(r.v);
  for (const auto& r : cs.extra)
    for (size_t t = 1; t < r.terms.size(); ++t) par[find(r.terms[0].first)] = find(r.terms[t].first);
  std::vector<uint32_t> block_of(n), local(n);
  std::map<uint32_t, uint32_t> root_id;
  std::vector<BlockRows> blocks;
  for (uint32_t s = 0; s < n; ++s) {
    uint32_t r = find(s);
    auto it = root_id.find(r);
    if (it == root_id.end()) {
      it = root_id.emplace(r, static_cast<uint32_t>(blocks.size())).first;
      blocks.emplace_back();
    }
    block_of[s] = it->second;
    local[s] = static_cast<uint32_t>(blocks[it->second].states.size());
    blocks[it->second].states.push_back(s);
  }
  for (const auto& r : cs.rows) {
    auto& B = blocks[block_of[r.u]];
    B.rows.push_back({{local[r.u], 1.0}, {local[r.v], -dpow(d, -r.k)}});
  }
  for (const auto& r : cs.extra) {
    if (r.terms.empty()) continue;
    auto& B = blocks[block_of[r.terms[0].first]];
    std::vector<std::pair<uint32_t, double>> t;
    for (auto [s, c] : r.terms) t.push_back({local[s], c});
    B.rows.push_back(t);
    B.two_term = false;
  }
  DenseKernel K;
  K.blocks = blocks.size();
  for (const auto& B : blocks) {
    size_t nb = B.states.size();
    if (B.rows.empty()) {
      K.vectors.push_back({{B.states[0], 1.0}});
      ++K.dim;
      continue;
    }
    if (nb <= kDenseBlockStates) {
      ++K.dense_blocks;
      Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(std::max(B.rows.size(), nb)), nb);
      for (size_t i = 0; i < B.rows.size(); ++i)
        for (auto [j, c] : B.rows[i]) A(static_cast<Eigen::Index>(i), j) += c;
      Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      double thr = rel_tol * (sv.size() ? sv(0) : 0.0);
      size_t rank = 0;
      for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > thr) ++rank;
      for (size_t c = rank; c < nb; ++c) {
        Eigen::VectorXd v = svd.matrixV().col(static_cast<Eigen::Index>(c));
        std::vector<std::pair<uint32_t, double>> vec;
        for (size_t j = 0; j < nb; ++j)
          if (v(j) != 0.0) vec.push_back({B.states[j], v(j)});
        Eigen::VectorXd res = A * v;
        K.max_residual = std::max(K.max_residual, res.norm());
        K.vectors.push_back(std::move(vec));
        ++K.dim;
      }
      continue;
    }
    if (!B.two_term)
      fail(Err::StateSpaceTooLarge, "multi-term block of " + std::to_string(nb) + " states is beyond the dense solver");
    ++K.iterative_blocks;
    double rel = 0, smax = 0;
    auto x = cgls_pinned(B, nb, &rel, &smax);
    if (rel <= rel_tol * smax) {
      double nx = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
      std::vector<std::pair<uint32_t, double>> vec;
      for (size_t j = 0; j < nb; ++j) vec.push_back({B.states[j], x[j] / nx});
      K.max_residual = std::max(K.max_residual, rel);
      K.vectors.push_back(std::move(vec));
      ++K.dim;
    }
  }
  return K;
}

bool kernel_contained(const ConstraintSystem& hp, const PropagatedKernel& k, const ConstraintSystem& ring) {
  if (hp.states != ring.states) fail(Err::ConfigInvalid, "containment needs a shared state space");
  // ring rows have k = 0: a_u = a_v. For a propagated vector that means both
  // states are in the same component with equal exponent, or both outside it;
  // states of different components carry independent vectors, so the row
  // kills every vector only when comp and exponent agree.
  for (const auto& r : ring.rows) {
    if (k.comp[r.u] != k.comp[r.v]) return false;
    if (hp.ell != 1 && k.exponent[r.u] != k.exponent[r.v]) return false;
  }
  return true;
}

EnergyReport uniform_state_energy(const ConstraintSystem& cs) {
  if (!cs.full_space()) fail(Err::StateSpaceTooLarge, "the uniform state needs the full configuration space");
  if (!cs.extra.empty()) fail(Err::ConfigInvalid, "energy is defined for projector rows only");
  Ring r = QDelta::supported(cs.ell) ? Ring::special(cs.ell) : Ring::floating_special(cs.ell);
  // group rows by (k, parity of the flipped bits)
  std::map<std::pair<int, int>, long> groups;
  for (const auto& row : cs.rows) {
    int par = __builtin_popcountll(cs.states[row.u] ^ cs.states[row.v]) & 1;
    groups[{row.k, par}]++;
  }
  EnergyReport e;
  e.ell = cs.ell;
  e.sites = cs.sites;
  e.rows = cs.rows.size();
  e.signed_value = r.zero();
  e.unsigned_value = r.zero();
  Scalar one = r.one();
  for (auto [key, count] : groups) {
    Scalar c = pow(r.d(), -key.first, r);
    Scalar nrm = one + c * c;
    // signs (-1)^{#-} differ on an odd flip
    Scalar sgn = key.second ? (one + c) * (one + c) : (one - c) * (one - c);
    Scalar uns = (one - c) * (one - c);
    e.signed_value += sgn / nrm * r.integer(count);
    e.unsigned_value += uns / nrm * r.integer(count);
  }
  Scalar scale = one;
  for (int i = 0; i < cs.sites; ++i) scale = scale / r.integer(2);
  e.signed_value *= scale;
  e.unsigned_value *= scale;
  e.signed_float = e.signed_value.to_double();
  e.unsigned_float = e.unsigned_value.to_double();
  return e;
}

std::string EnergyReport::json() const {
  nlohmann::json j;
  j["ell"] = ell;
  j["sites"] = sites;
  j["rows"] = rows;
  j["signed"] = signed_value.str();
  j["unsigned"] = unsigned_value.str();
  j["signed_float"] = signed_float;
  j["unsigned_float"] = unsigned_float;
  j["flags"] = {"uniform-state energy is reported as computed; no exponential lower bound is asserted, since a sum of "
                "T projectors has norm at most T"};
  return j.dump();
}

SwapSplit swap_split(const SurfaceLattice& lat, const ConstraintSystem& cs, const PropagatedKernel& k) {
  if (lat.bond_model()) fail(Err::ConfigInvalid, "the bare swap is a symmetry of the plaque model only");
  SwapSplit out;
  for (uint32_t c = 0; c < k.dim; ++c) {
    // find a representative and its image
    size_t rep = 0;
    while (k.comp[rep] != c) ++rep;
    size_t img = cs.index_of(global_swap(lat, cs.states[rep]));
    if (img == cs.states.size()) fail(Err::ConfigInvalid, "state space not closed under the swap");
    uint32_t c2 = k.comp[img];
    if (c2 == c) {
      // the swap preserves walls, so the amplitude pattern is invariant
      if (k.exponent[img] - k.exponent[rep] != 0 && cs.ell != 1) fail(Err::Internal, "swap changed a loop count");
      ++out.plus;
    } else if (c < c2) {
      ++out.plus;
      ++out.minus;
    }
  }
  return out;
}

}  // namespace tlg
