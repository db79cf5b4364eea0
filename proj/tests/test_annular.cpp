// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tlg/annular.hpp"

using namespace tlg;

namespace {
const Ring G = Ring::generic();

Morphism random_square(std::mt19937_64& rng, const Ring& r, int n) {
  auto basis = enumerate_diagrams(n, n);
  Morphism x(r, n, n);
  for (int t = 0; t < 3; ++t) x.add_term(basis[rng() % basis.size()], r.integer(1 + static_cast<long>(rng() % 4)));
  return x;
}

// independent count: union-find over points with the closure edges added
std::pair<int, int> loops_by_union_find(const Diagram& d) {
  int n = d.n;
  std::vector<int> par(2 * n);
  for (int i = 0; i < 2 * n; ++i) par[i] = i;
  auto find = [&](int x) {
    while (par[x] != x) x = par[x] = par[par[x]];
    return x;
  };
  for (int i = 0; i < 2 * n; ++i) par[find(i)] = find(d.p[i]);
  for (int i = 0; i < n; ++i) par[find(i)] = find(i + n);
  // a loop is essential iff it uses an odd number of through strands
  std::vector<int> through(2 * n, 0), seen(2 * n, 0);
  for (int i = 0; i < n; ++i)
    if (d.p[i] >= n) through[find(i)]++;
  int t = 0, e = 0;
  for (int i = 0; i < 2 * n; ++i) {
    int r = find(i);
    if (seen[r]) continue;
    seen[r] = 1;
    (through[r] % 2 ? e : t)++;
  }
  return {t, e};
}
}  // namespace

TEST(Annular, ClosureExamples) {
  EXPECT_EQ(annular_closure(Morphism::identity(G, 2)), RPolynomial::monomial(G, 2, G.one()));
  EXPECT_EQ(annular_closure(Morphism::U(G, 2, 1)), RPolynomial::monomial(G, 0, G.d()));
  RPolynomial want(G, {G.integer(-1), G.zero(), G.one()});
  EXPECT_EQ(annular_closure(jones_wenzl(G, 2)), want);
  RPolynomial p3(G, {G.zero(), G.integer(-2), G.zero(), G.one()});
  EXPECT_EQ(annular_closure(jones_wenzl(G, 3)), p3);
  EXPECT_THROW(annular_closure(Morphism(G, Diagram::cap())), Error);
}

TEST(Annular, LoopCountsAgreeWithUnionFind) {
  for (int n = 1; n <= 6; ++n)
    for (const auto& d : enumerate_diagrams(n, n)) {
      auto a = annular_loops(d);
      auto b = loops_by_union_find(d);
      EXPECT_EQ(a, b) << d.str();
      EXPECT_EQ(a.second % 2, d.through_strands() % 2);
    }
}

TEST(Annular, ConjugationInvariance) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    int n = 1 + static_cast<int>(rng() % 5);
    Morphism a = random_square(rng, G, n), b = random_square(rng, G, n);
    EXPECT_EQ(annular_closure(compose(a, b)), annular_closure(compose(b, a)));
  }
}

TEST(Annular, SettingRToDGivesTrace) {
  for (int k = 1; k <= 5; ++k) {
    const Morphism& p = jones_wenzl(G, k);
    EXPECT_EQ(annular_closure(p).eval(G.d()), markov_trace(p));
  }
}

TEST(Annular, IdealExamples) {
  auto i1 = annular_ideal(1, 3);
  Ring r1 = Ring::special(1);
  RPolynomial q(r1, {r1.integer(-1), r1.zero(), r1.one()});
  EXPECT_TRUE(q.mod(i1.generator).is_zero());
  auto i2 = annular_ideal(2, 4);
  EXPECT_LE(i2.generator.degree(), 3);
  EXPECT_GE(i2.generator.degree(), 1);
  for (int ell = 1; ell <= 3; ++ell) {
    auto id = annular_ideal(ell, ell + 2);
    Ring r = Ring::special(ell);
    EXPECT_TRUE(id.generator.eval(r.d()).is_zero()) << ell;
    EXPECT_TRUE(id.generator.lead() == r.one());
  }
  EXPECT_THROW(annular_ideal(2, 2), Error);
}

TEST(Annular, GeneratorDividesClosures) {
  for (int ell = 1; ell <= 3; ++ell) {
    auto id = annular_ideal(ell, ell + 2);
    Ring r = Ring::special(ell);
    const Morphism& p = jones_wenzl(r, ell + 1);
    Morphism y = tensor(p, Morphism::identity(r, 1));
    for (const auto& z : enumerate_diagrams(ell + 2, ell + 2))
      EXPECT_TRUE(annular_closure(compose(y, Morphism(r, z))).mod(id.generator).is_zero());
  }
}

TEST(Annular, RingEigenvalueFormula) {
  for (int ell = 1; ell <= 6; ++ell)
    for (int p = 0; p <= ell; ++p)
      EXPECT_NEAR(ring_eigenvalue(ell, p), (p % 2 ? -1 : 1) * 2 * std::cos((p + 1) * M_PI / (ell + 2)), 1e-12);
}

TEST(Annular, EvenLevelRootsMatchFamily) {
  for (int ell : {2, 4}) {
    double err = 1;
    EXPECT_TRUE(roots_match_family(annular_ideal(ell, ell + 1), 1e-9, &err)) << ell;
    EXPECT_LT(err, 1e-9);
  }
}

TEST(Annular, PolynomialArithmetic) {
  Ring r = Ring::special(3);
  RPolynomial a(r, {r.integer(1), r.d(), r.one()});
  RPolynomial b(r, {r.integer(-1), r.one()});
  RPolynomial ab = a * b;
  EXPECT_EQ(ab.degree(), 3);
  EXPECT_TRUE(ab.mod(b).is_zero());
  EXPECT_EQ(gcd(ab, b * b), b);
  EXPECT_EQ((ab - a * b).degree(), -1);
  auto rs = RPolynomial(r, {r.integer(-2), r.zero(), r.one()}).roots();
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_NEAR(rs[1].real(), std::sqrt(2.0), 1e-12);
}

TEST(Annular, BetaIndexRange) {
  auto id = annular_ideal(2, 3);
  EXPECT_NO_THROW(beta_projector(2, 2, SConvention::Shifted, id.generator));
  EXPECT_THROW(beta_projector(3, 2, SConvention::Shifted, id.generator), Error);
  EXPECT_THROW(beta_projector(-1, 2, SConvention::Unshifted, id.generator), Error);
  // unshifted: S_{.,0} vanishes so the constant term is always 0
  for (int n = 0; n < beta_count(2); ++n)
    EXPECT_NEAR(beta_projector(n, 2, SConvention::Unshifted, id.generator).coeff(0).flt(), 0.0, 1e-12);
}
