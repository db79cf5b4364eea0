// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#pragma once

#include <string>
#include <vector>

#include "tlg/lattice.hpp"
#include "tlg/scalar.hpp"

namespace tlg {

enum class RowTag { G, H, Box, DualBox, RingExchange, Skein, Synthetic };
const char* row_tag_name(RowTag t);

// Two-term row: kernel condition a_v = d^k a_u. The projector behind it is
// onto e_u - d^(-k) e_v (the side with more loops gets the 1/d).
struct RatioRow {
  uint32_t u, v;
  int k;
  RowTag tag;
  int site;  // cell, vertex or plaque hosting the term
};

// General row with float coefficients (fixtures, small patches).
struct SparseRow {
  std::vector<std::pair<uint32_t, double>> terms;
  RowTag tag = RowTag::Synthetic;
};

inline constexpr size_t kDefaultStateCap = 300000;

struct ConstraintSystem {
  Model model = Model::HPrime;
  int ell = 1;
  std::string lattice;          // description
  int sites = 0;
  std::vector<Config> states;   // sorted
  std::vector<RatioRow> rows;
  std::vector<SparseRow> extra;
  int primary_terms = 0, dual_terms = 0;  // operator terms, independent of the state space
  bool full_space() const { return sites < 64 && states.size() == (size_t(1) << sites); }
  size_t index_of(Config s) const;  // states.size() when absent
};

// Seeds empty: the full configuration space (2^sites <= cap), else
// the union of the components of the seeds.
ConstraintSystem build_h0(const SurfaceLattice& lat, int ell, const std::vector<Config>& seeds = {},
                          size_t cap = kDefaultStateCap);
ConstraintSystem build_hprime(const SurfaceLattice& lat, int ell, const std::vector<Config>& seeds = {},
                              size_t cap = kDefaultStateCap);
ConstraintSystem build_ring_exchange(const SurfaceLattice& lat, const std::vector<Config>& seeds = {},
                                     size_t cap = kDefaultStateCap);
ConstraintSystem build_system(const SurfaceLattice& lat, Model m, int ell, const std::vector<Config>& seeds = {},
                              size_t cap = kDefaultStateCap);
// (primary, dual) operator term counts for a bond lattice
std::pair<int, int> hprime_term_counts(const SurfaceLattice& lat);

struct PauliCheck {
  int ell = 0;
  bool box_vector_is_printed_simplified = false;    // as printed, -(2/d^2) sx
  bool box_vector_is_printed_expanded = false;
  bool dual_vector_is_printed_simplified = false;
  bool dual_vector_is_printed_expanded = false;
  bool box_vector_is_corrected = false;              // -(2/d) sx
  bool dual_vector_is_corrected = false;
  bool projector_is_scaled_outer = false;            // P = |v><v| / (1 + 1/d^2)
  bool printed_ok() const {
    return box_vector_is_printed_simplified && dual_vector_is_printed_simplified && box_vector_is_printed_expanded &&
           dual_vector_is_printed_expanded;
  }
  std::string json() const;
};
PauliCheck pauli_expand_check(int ell);

// Exact kernel by ratio propagation: one vector per consistent component,
// amplitude d^exponent[s] on the states of that component.
struct PropagatedKernel {
  int ell = 1;
  uint32_t dim = 0;
  std::vector<uint32_t> comp;  // per state
  std::vector<int> exponent;   // per state, relative to the component's first state
  std::vector<uint32_t> sizes;
};
PropagatedKernel kernel_propagate(const ConstraintSystem& cs);

struct DenseKernel {
  size_t dim = 0;
  size_t blocks = 0, dense_blocks = 0, iterative_blocks = 0;
  std::vector<std::vector<std::pair<uint32_t, double>>> vectors;  // unit norm, disjoint supports per block
  double max_residual = 0;
};
DenseKernel kernel_dense(const ConstraintSystem& cs, double rel_tol = 1e-8);

// G' inside G'': every propagated H' kernel vector is annihilated by every
// ring-exchange row (same state space, exact check)
bool kernel_contained(const ConstraintSystem& hprime, const PropagatedKernel& k, const ConstraintSystem& ring);

struct EnergyReport {
  int ell = 0, sites = 0;
  size_t rows = 0;
  Scalar signed_value, unsigned_value;  // <theta|H|theta>, with and without (-1)^{#-}
  double signed_float = 0, unsigned_float = 0;
  std::string json() const;
};
EnergyReport uniform_state_energy(const ConstraintSystem& cs);

// Swap eigenspaces of a plaque-model kernel (the swap preserves walls there).
struct SwapSplit {
  uint32_t plus = 0, minus = 0;
};
SwapSplit swap_split(const SurfaceLattice& lat, const ConstraintSystem& cs, const PropagatedKernel& k);

// ---- skein instances ----

struct SkeinInstance {
  int x0 = 0, y0 = 0, a = 0, b = 0;  // window of a x b faces at (x0, y0)
  int start = 0;                     // first dangling end of the arc
  Config mask = 0;                   // interior bonds
  struct Term {
    Scalar coeff;   // JW coefficient
    Config local;   // interior bond pattern realizing the diagram
    int loops = 0;  // closed loops inside the window
  };
  std::vector<Term> terms;
};

struct WindowShape {
  int a = 0, b = 0;
};
// minimal window realizing TL_{ell+1} with one row/column outside; throws WindowDoesNotFit
WindowShape skein_window(const SurfaceLattice& lat, int ell);
std::vector<SkeinInstance> compile_skein_instances(const SurfaceLattice& lat, int ell, const Ring& r);

struct JointKernelReport {
  int ell = 0;
  std::string lattice;
  size_t instances = 0, rows = 0, unique_rows = 0;
  uint32_t g0_dim = 0;
  size_t dim_exact = 0, dim_float = 0;
  int target = 0;  // torus dimension from the modular data
  std::string verdict;
  std::vector<double> singular_values;
  bool probe_ok = false;
  double probe_deviation = 0;
  std::string json() const;
};
// single_window: only the instances at the first window placement
JointKernelReport joint_kernel(const SurfaceLattice& lat, int ell, bool single_window = false);

}  // namespace tlg
