// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#pragma once

#include <string>
#include <vector>

#include "tlg/linalg.hpp"
#include "tlg/tl.hpp"

namespace tlg {

struct YoungDiagram2 {
  int l1 = 0, l2 = 0;
  int size() const { return l1 + l2; }
  int width() const { return l1 - l2 + 1; }
  bool valid() const { return l1 >= l2 && l2 >= 0; }
  bool operator==(const YoungDiagram2& o) const { return l1 == o.l1 && l2 == o.l2; }
};

using BrattPath = std::vector<YoungDiagram2>;

bool valid_path(const BrattPath& p);
unsigned long long path_count(const YoungDiagram2& lam);
std::vector<BrattPath> enumerate_paths(const YoungDiagram2& lam);
std::vector<YoungDiagram2> diagrams_of_size(int n);

// main-text level ell maps to the appendix root order ell + 2
inline int appendix_order(int ell) { return ell + 2; }
bool is_critical(const YoungDiagram2& lam, int ell_app);
int first_critical_size(int ell_app);

// eps_n: close the last strand
Morphism conditional_expectation(const Morphism& a);

// basis (as coordinate rows over enumerate_diagrams(n,n)) of the two-sided
// ideal of TL_n generated by g
RowSpace ideal_span(const Morphism& g, int n);
// literal definition: a o (1_i (x) g (x) 1_j) o b over diagrams a,b with
// intermediate grade up to m_max; slow, used as an oracle
RowSpace ideal_span_literal(const Morphism& g, int n, int m_max);

struct GradeReport {
  int n;
  size_t radical_dim, ideal_dim;
  bool equal;
};

struct IdealTheoremReport {
  int ell;
  std::vector<GradeReport> grades;
  bool all_equal() const;
  std::string json() const;
};

// throws MismatchAtGrade when strict and a grade disagrees
IdealTheoremReport verify_ideal_theorem(int ell, int n_max, bool strict = true);

bool same_subspace(const RowSpace& a, const RowSpace& b);

}  // namespace tlg
