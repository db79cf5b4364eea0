// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#pragma once

#include <string>
#include <vector>

namespace tlg {

enum class SConvention { Unshifted, Shifted };
const char* convention_name(SConvention c);

using DMatrix = std::vector<std::vector<double>>;

// single entry, any integer indices
double s_entry(int ell, int y, int x, SConvention c);
// (ell+1) x (ell+1)
DMatrix s_matrix(int ell, SConvention c);

int numeric_rank(const DMatrix& a, double rel_tol = 1e-9);

struct LevelData {
  int ell = 0;
  int label_count = 0;
  int color_reversing_count = 0;
  int specific_heat = 0;
  DMatrix s_full, s_even;
  int even_rank = 0;
  bool even_singular = false;
  // even sector after splitting the fixed point of a ~ ell - a, when possible
  int resolved_rank = 0, resolved_size = 0;
  bool nonsingular_utmf = false;
  int even_pair_count = 0;    // (even, even) pairs in [0, ell]^2
};

LevelData level_data(int ell);
std::vector<LevelData> level_table(int ell_max);
std::string level_table_csv(const std::vector<LevelData>& t);

double torus_dimension_estimate(int ell, int genus);

}  // namespace tlg
