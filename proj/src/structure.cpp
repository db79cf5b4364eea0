// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#include "tlg/structure.hpp"

#include <deque>
#include <map>

#include "json.hpp"

namespace tlg {

bool valid_path(const BrattPath& p) {
  if (p.empty() || !(p[0] == YoungDiagram2{0, 0})) return false;
  for (size_t i = 0; i < p.size(); ++i) {
    if (!p[i].valid()) return false;
    if (i == 0) continue;
    int a = p[i].l1 - p[i - 1].l1, b = p[i].l2 - p[i - 1].l2;
    if (!((a == 1 && b == 0) || (a == 0 && b == 1))) return false;
  }
  return true;
}

unsigned long long path_count(const YoungDiagram2& lam) {
  if (!lam.valid()) return 0;
  // f over the Bratteli graph, row by row of sizes
  std::map<std::pair<int, int>, unsigned long long> f;
  f[{0, 0}] = 1;
  for (int s = 1; s <= lam.size(); ++s)
    for (int b = 0; 2 * b <= s; ++b) {
      int a = s - b;
      unsigned long long v = 0;
      if (a - 1 >= b) v += f[{a - 1, b}];
      if (b >= 1) v += f[{a, b - 1}];
      f[{a, b}] = v;
    }
  return f[{lam.l1, lam.l2}];
}

std::vector<BrattPath> enumerate_paths(const YoungDiagram2& lam) {
  std::vector<BrattPath> out;
  if (!lam.valid()) return out;
  BrattPath cur{{0, 0}};
  auto rec = [&](auto&& self) -> void {
    const YoungDiagram2 t = cur.back();
    if (t == lam) {
      out.push_back(cur);
      return;
    }
    if (t.l1 < lam.l1) {
      cur.push_back({t.l1 + 1, t.l2});
      self(self);
      cur.pop_back();
    }
    if (t.l2 < lam.l2 && t.l2 + 1 <= t.l1) {
      cur.push_back({t.l1, t.l2 + 1});
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

std::vector<YoungDiagram2> diagrams_of_size(int n) {
  std::vector<YoungDiagram2> v;
  for (int b = 0; 2 * b <= n; ++b) v.push_back({n - b, b});
  return v;
}

bool is_critical(const YoungDiagram2& lam, int ell_app) {
  if (ell_app < 3) fail(Err::ConfigInvalid, "criticality needs root order >= 3");
  return lam.width() % ell_app == 0;
}

int first_critical_size(int ell_app) {
  for (int n = 0;; ++n)
    for (const auto& lam : diagrams_of_size(n))
      if (is_critical(lam, ell_app)) return n;
}

Morphism conditional_expectation(const Morphism& a) {
  if (a.m() != a.n() || a.m() < 1) fail(Err::SignatureMismatch, "conditional expectation needs TL_{n+1}");
  const Ring& r = a.ring();
  int n = a.m() - 1;
  Morphism top = tensor(Morphism::identity(r, n), Morphism(r, Diagram::cap()));
  Morphism bot = tensor(Morphism::identity(r, n), Morphism(r, Diagram::cup()));
  return compose(bot, compose(tensor(a, Morphism::identity(r, 1)), top));
}

namespace {
std::vector<Morphism> placements(const Morphism& g, int m) {
  std::vector<Morphism> v;
  int k = g.m();
  const Ring& r = g.ring();
  for (int i = 0; i + k <= m; ++i) {
    Morphism x = g;
    if (i > 0) x = tensor(Morphism::identity(r, i), x);
    if (m - k - i > 0) x = tensor(x, Morphism::identity(r, m - k - i));
    v.push_back(std::move(x));
  }
  return v;
}
}  // namespace

RowSpace ideal_span_literal(const Morphism& g, int n, int m_max) {
  if (g.m() != g.n()) fail(Err::SignatureMismatch, "ideal generator must be square");
  const Ring& r = g.ring();
  auto basis = enumerate_diagrams(n, n);
  RowSpace rs(r, basis.size());
  for (int m = g.m(); m <= m_max; ++m) {
    if ((m + n) % 2) continue;
    auto as = enumerate_diagrams(m, n), bs = enumerate_diagrams(n, m);
    for (const auto& y : placements(g, m)) {
      // right ideal first: span of y o b
      RowSpace right(r, enumerate_diagrams(n, m).size());
      std::vector<Morphism> rb;
      auto nm = enumerate_diagrams(n, m);
      for (const auto& b : bs) {
        Morphism yb = compose(y, Morphism(r, b));
        if (right.insert(coordinates(yb, nm))) rb.push_back(yb);
      }
      for (const auto& a : as)
        for (const auto& x : rb) rs.insert(coordinates(compose(Morphism(r, a), x), basis));
    }
  }
  return rs;
}

RowSpace ideal_span(const Morphism& g, int n) {
  if (g.m() != g.n()) fail(Err::SignatureMismatch, "ideal generator must be square");
  int k = g.m();
  if (n < k) return ideal_span_literal(g, n, k + 2);
  const Ring& r = g.ring();
  auto basis = enumerate_diagrams(n, n);
  RowSpace rs(r, basis.size());
  std::deque<Morphism> q;
  for (auto& y : placements(g, n))
    if (rs.insert(coordinates(y, basis))) q.push_back(std::move(y));
  std::vector<Morphism> us;
  for (int i = 1; i < n; ++i) us.push_back(Morphism::U(r, n, i));
  while (!q.empty() && rs.rank() < basis.size()) {
    Morphism v = std::move(q.front());
    q.pop_front();
    for (const auto& u : us) {
      Morphism a = compose(u, v), b = compose(v, u);
      if (rs.insert(coordinates(a, basis))) q.push_back(std::move(a));
      if (rs.insert(coordinates(b, basis))) q.push_back(std::move(b));
    }
  }
  return rs;
}

bool same_subspace(const RowSpace& a, const RowSpace& b) {
  if (a.rank() != b.rank()) return false;
  for (const auto& row : a.rows())
    if (!b.contains(row)) return false;
  return true;
}

bool IdealTheoremReport::all_equal() const {
  for (const auto& g : grades)
    if (!g.equal) return false;
  return true;
}

std::string IdealTheoremReport::json() const {
  nlohmann::json j;
  j["ell"] = ell;
  j["grades"] = nlohmann::json::array();
  for (const auto& g : grades)
    j["grades"].push_back({{"n", g.n}, {"radical_dim", g.radical_dim}, {"ideal_dim", g.ideal_dim}, {"equal", g.equal}});
  j["all_equal"] = all_equal();
  return j.dump();
}

IdealTheoremReport verify_ideal_theorem(int ell, int n_max, bool strict) {
  Ring r = Ring::special(ell);
  const Morphism& p = jones_wenzl(r, ell + 1);
  IdealTheoremReport rep{ell, {}};
  for (int n = 1; n <= n_max; ++n) {
    auto basis = enumerate_diagrams(n, n);
    RowSpace rad(r, basis.size());
    for (const auto& x : radical_basis(n, ell)) rad.insert(coordinates(x, basis));
    RowSpace id = ideal_span(p, n);
    bool eq = same_subspace(rad, id);
    rep.grades.push_back({n, rad.rank(), id.rank(), eq});
    if (strict && !eq)
      fail(Err::MismatchAtGrade, "ideal and radical differ at grade " + std::to_string(n) + " (ell=" +
                                     std::to_string(ell) + ")");
  }
  return rep;
}

}  // namespace tlg
