// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#pragma once

#include <vector>

#include "tlg/scalar.hpp"

namespace tlg {

using SMatrix = std::vector<std::vector<Scalar>>;

// Row echelon span over an exact field (generic or special) or floats with
// a pivot threshold. Rows are inserted one at a time.
class RowSpace {
 public:
  RowSpace(const Ring& r, size_t ncols, double tol = 1e-9);
  // returns true if v was independent of the current span
  bool insert(std::vector<Scalar> v);
  bool contains(const std::vector<Scalar>& v) const;
  size_t rank() const { return rows_.size(); }
  size_t ncols() const { return ncols_; }
  const std::vector<std::vector<Scalar>>& rows() const { return rows_; }
  const std::vector<size_t>& pivots() const { return piv_; }

 private:
  std::vector<Scalar> reduce(std::vector<Scalar> v) const;
  bool negligible(const Scalar& x) const;
  Ring ring_;
  size_t ncols_;
  double tol_;
  std::vector<std::vector<Scalar>> rows_;  // pivot normalized to 1
  std::vector<size_t> piv_;
};

size_t rank(const Ring& r, const SMatrix& a);
// basis of {x : a x = 0}
std::vector<std::vector<Scalar>> nullspace(const Ring& r, const SMatrix& a);
Scalar determinant(const Ring& r, SMatrix a);

}  // namespace tlg
