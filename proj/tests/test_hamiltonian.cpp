// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "tlg/hamiltonian.hpp"

using namespace tlg;

namespace {
// <theta|sum_rows P|theta> straight from the projector vectors, in doubles
double brute_energy(const ConstraintSystem& cs, bool sign) {
  double d = QDelta::delta_value(cs.ell);
  double amp = std::pow(2.0, -cs.sites / 2.0);
  auto theta = [&](Config s) { return (sign && (__builtin_popcountll(s) & 1)) ? -amp : amp; };
  double e = 0;
  for (const auto& r : cs.rows) {
    double c = std::pow(d, -r.k);
    double dot = theta(cs.states[r.u]) - c * theta(cs.states[r.v]);
    e += dot * dot / (1 + c * c);
  }
  return e;
}

ConstraintSystem synthetic(int ell, size_t n) {
  ConstraintSystem cs;
  cs.ell = ell;
  for (size_t i = 0; i < n; ++i) cs.states.push_back(i);
  return cs;
}
}  // namespace

TEST(Hamiltonian, TermCounts) {
  EXPECT_EQ(hprime_term_counts(SurfaceLattice::square_torus(10, 10)), std::make_pair(400, 400));
  EXPECT_EQ(hprime_term_counts(SurfaceLattice::square_torus(2, 2)), std::make_pair(16, 16));
  // 2x3 disk: 6 cells, 2 interior vertices
  EXPECT_EQ(hprime_term_counts(SurfaceLattice::square_disk(2, 3)), std::make_pair(24, 8));
  auto cs = build_hprime(SurfaceLattice::square_torus(2, 2), 2);
  EXPECT_EQ(cs.primary_terms, 16);
  EXPECT_EQ(cs.states.size(), 256u);
  EXPECT_TRUE(cs.full_space());
}

TEST(Hamiltonian, PauliExpansion) {
  for (int ell : {2, 3, 4}) {
    auto p = pauli_expand_check(ell);
    EXPECT_TRUE(p.box_vector_is_corrected) << ell;
    EXPECT_TRUE(p.dual_vector_is_corrected) << ell;
    EXPECT_TRUE(p.box_vector_is_printed_expanded) << ell;
    // the printed short forms carry -(2/d^2) where -(2/d) is needed
    EXPECT_FALSE(p.box_vector_is_printed_simplified) << ell;
    EXPECT_FALSE(p.dual_vector_is_printed_simplified) << ell;
    EXPECT_FALSE(p.printed_ok()) << ell;
  }
}

TEST(Hamiltonian, RowsFollowLoopRatio) {
  auto L = SurfaceLattice::square_torus(2, 2);
  for (Model m : {Model::HPrime, Model::RingExchange}) {
    auto cs = build_system(L, m, 2);
    ASSERT_FALSE(cs.rows.empty());
    for (const auto& r : cs.rows) {
      int k = loop_count(L, cs.states[r.v]) - loop_count(L, cs.states[r.u]);
      EXPECT_EQ(r.k, k);
      EXPECT_GE(r.k, 0);
      if (m == Model::RingExchange) EXPECT_EQ(r.k, 0);
    }
  }
}

TEST(Hamiltonian, PropagateMatchesDense) {
  auto L = SurfaceLattice::square_torus(2, 2);
  std::map<Model, uint32_t> dims;
  for (int ell = 1; ell <= 3; ++ell)
    for (Model m : {Model::HPrime, Model::RingExchange}) {
      auto cs = build_system(L, m, ell);
      auto kp = kernel_propagate(cs);
      auto kd = kernel_dense(cs);
      EXPECT_EQ(kp.dim, kd.dim) << ell << " " << model_name(m);
      EXPECT_LT(kd.max_residual, 1e-9);
      if (dims.count(m)) EXPECT_EQ(dims[m], kp.dim);  // same sectors at every level
      dims[m] = kp.dim;
      // amplitudes go as d^#loops inside a component
      std::vector<int> base(kp.dim, INT32_MIN);
      for (size_t i = 0; i < cs.states.size(); ++i) {
        int l = loop_count(L, cs.states[i]);
        uint32_t c = kp.comp[i];
        if (base[c] == INT32_MIN) base[c] = l - kp.exponent[i];
        EXPECT_EQ(l - kp.exponent[i], base[c]);
      }
    }
  EXPECT_EQ(dims[Model::HPrime], 10u);
  EXPECT_EQ(dims[Model::RingExchange], 40u);
}

TEST(Hamiltonian, ThreeByThreeLevelThree) {
  auto cs = build_hprime(SurfaceLattice::square_torus(3, 3), 3);
  auto kp = kernel_propagate(cs);
  auto kd = kernel_dense(cs);
  EXPECT_EQ(kp.dim, kd.dim);
  EXPECT_EQ(kp.dim, 22u);
}

TEST(Hamiltonian, Containment) {
  auto L = SurfaceLattice::square_torus(2, 2);
  for (int ell = 1; ell <= 3; ++ell) {
    auto hp = build_hprime(L, ell);
    auto re = build_ring_exchange(L);
    EXPECT_TRUE(kernel_contained(hp, kernel_propagate(hp), re)) << ell;
  }
}

TEST(Hamiltonian, InconsistentCycle) {
  auto cs = synthetic(2, 3);
  cs.rows = {{0, 1, 1, RowTag::Synthetic, 0}, {1, 2, 1, RowTag::Synthetic, 0}, {0, 2, 0, RowTag::Synthetic, 0}};
  try {
    kernel_propagate(cs);
    FAIL() << "cycle accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Err::InconsistentCycle);
  }
  // the dense solver sees the same thing as an empty kernel
  EXPECT_EQ(kernel_dense(cs).dim, 0u);
  // at level 1 every ratio is 1, so the cycle closes
  cs.ell = 1;
  EXPECT_EQ(kernel_propagate(cs).dim, 1u);
  EXPECT_EQ(kernel_dense(cs).dim, 1u);
}

TEST(Hamiltonian, SyntheticExtremes) {
  auto empty = synthetic(2, 5);
  EXPECT_EQ(kernel_propagate(empty).dim, 5u);
  EXPECT_EQ(kernel_dense(empty).dim, 5u);
  auto full = synthetic(2, 3);
  full.extra = {{{{0, 1.0}, {1, 1.0}}}, {{{1, 1.0}, {2, 2.0}}}, {{{0, 1.0}, {2, -1.0}}}};
  EXPECT_EQ(kernel_dense(full).dim, 0u);
  EXPECT_THROW(kernel_propagate(full), Error);
  // rank 2 of 3: one vector, proportional to (1, -1, 1/2)
  full.extra.pop_back();
  auto k = kernel_dense(full);
  ASSERT_EQ(k.dim, 1u);
  const auto& v = k.vectors[0];
  ASSERT_EQ(v.size(), 3u);
  EXPECT_NEAR(v[1].second / v[0].second, -1.0, 1e-12);
  EXPECT_NEAR(v[2].second / v[0].second, 0.5, 1e-12);
}

TEST(Hamiltonian, UniformStateEnergy) {
  auto L = SurfaceLattice::square_torus(2, 2);
  for (int ell = 1; ell <= 4; ++ell) {
    auto cs = build_hprime(L, ell);
    auto e = uniform_state_energy(cs);
    EXPECT_NEAR(e.signed_float, brute_energy(cs, true), 1e-10) << ell;
    EXPECT_NEAR(e.unsigned_float, brute_energy(cs, false), 1e-10) << ell;
    EXPECT_GT(e.signed_float, 0.0);
    if (ell == 1) EXPECT_NEAR(e.unsigned_float, 0.0, 1e-14);  // d = 1: uniform state is a ground state
    else EXPECT_GT(e.unsigned_float, 0.0);
  }
  // exact value at level 2: 2 + (4/3) sqrt2
  auto e2 = uniform_state_energy(build_hprime(L, 2));
  EXPECT_NEAR(e2.signed_float, 2.0 + 4.0 / 3.0 * std::sqrt(2.0), 1e-12);
}

TEST(Hamiltonian, PlaqueModelSwap) {
  auto T = SurfaceLattice::triangular_torus(3, 3);
  auto cs = build_h0(T, 2);
  auto k = kernel_propagate(cs);
  EXPECT_EQ(k.dim, kernel_dense(cs).dim);
  auto sp = swap_split(T, cs, k);
  EXPECT_EQ(sp.plus + sp.minus, k.dim);
  EXPECT_GE(sp.plus, sp.minus);
  auto L = SurfaceLattice::square_torus(2, 2);
  auto hp = build_hprime(L, 2);
  EXPECT_THROW(swap_split(L, hp, kernel_propagate(hp)), Error);
}

TEST(Hamiltonian, StateCap) {
  try {
    build_hprime(SurfaceLattice::square_torus(3, 3), 2, {}, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Err::StateSpaceTooLarge);
  }
  // a seeded sector is a proper part of the space
  auto L = SurfaceLattice::square_torus(3, 3);
  auto cs = build_hprime(L, 2, {0});
  EXPECT_LT(cs.states.size(), size_t(1) << 18);
  EXPECT_FALSE(cs.full_space());
  EXPECT_EQ(kernel_propagate(cs).dim, 1u);
}

TEST(Skein, WindowShapes) {
  auto L = SurfaceLattice::square_torus(3, 3);
  auto w1 = skein_window(L, 1);
  EXPECT_EQ(w1.a * w1.b, 2);
  auto w2 = skein_window(L, 2);
  EXPECT_EQ(w2.a, 2);
  EXPECT_EQ(w2.b, 2);
  try {
    skein_window(L, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Err::WindowDoesNotFit);
  }
  EXPECT_THROW(skein_window(SurfaceLattice::square_torus(2, 2), 1), Error);
}

TEST(Skein, InstanceTerms) {
  auto L = SurfaceLattice::square_torus(3, 3);
  // level 1: p_2 = 1 - U/d with d = 1
  auto r1 = Ring::special(1);
  auto in1 = compile_skein_instances(L, 1, r1);
  ASSERT_FALSE(in1.empty());
  for (const auto& in : in1) {
    ASSERT_EQ(in.terms.size(), 2u);
    EXPECT_EQ(in.terms[0].coeff + in.terms[1].coeff, r1.zero());
    EXPECT_NEAR(std::abs(in.terms[0].coeff.to_double()), 1.0, 1e-15);
    for (const auto& t : in.terms) EXPECT_EQ(t.local & ~in.mask, 0u);
  }
  // level 2: JW_3 = 1 - d/(d^2-1) (e1 + e2) + 1/(d^2-1) (e1e2 + e2e1), d = sqrt2
  auto r2 = Ring::special(2);
  auto in2 = compile_skein_instances(L, 2, r2);
  ASSERT_FALSE(in2.empty());
  for (const auto& in : in2) {
    ASSERT_EQ(in.terms.size(), 5u);
    std::vector<double> c;
    for (const auto& t : in.terms) c.push_back(t.coeff.to_double());
    std::sort(c.begin(), c.end());
    EXPECT_NEAR(c[0], -std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(c[1], -std::sqrt(2.0), 1e-12);
    for (int i = 2; i < 5; ++i) EXPECT_NEAR(c[i], 1.0, 1e-12);
  }
}

TEST(Skein, JointKernelLevelOne) {
  auto r = joint_kernel(SurfaceLattice::square_torus(3, 2), 1);
  EXPECT_EQ(r.dim_exact, r.dim_float);
  EXPECT_EQ(r.dim_exact, 1u);
  EXPECT_EQ(r.target, 1);
  EXPECT_TRUE(r.probe_ok);
  EXPECT_LE(r.dim_exact, r.g0_dim);
}
