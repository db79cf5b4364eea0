// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#include "tlg/linalg.hpp"

#include <cmath>

namespace tlg {

RowSpace::RowSpace(const Ring& r, size_t ncols, double tol) : ring_(r), ncols_(ncols), tol_(tol) {}

bool RowSpace::negligible(const Scalar& x) const {
  if (ring_.backend == Backend::Float) return std::fabs(x.flt()) <= tol_;
  return x.is_zero();
}

std::vector<Scalar> RowSpace::reduce(std::vector<Scalar> v) const {
  for (size_t k = 0; k < rows_.size(); ++k) {
    const Scalar f = v[piv_[k]];
    if (f.is_zero()) continue;
    const auto& row = rows_[k];
    for (size_t j = 0; j < ncols_; ++j)
      if (!row[j].is_zero()) v[j] -= f * row[j];
    v[piv_[k]] = ring_.zero();
  }
  return v;
}

bool RowSpace::insert(std::vector<Scalar> v) {
  if (ring_.backend == Backend::Float) {
    // scale to unit max-norm so the threshold is relative
    double mx = 0;
    for (auto& x : v) mx = std::max(mx, std::fabs(x.flt()));
    if (mx <= 0) return false;
    for (auto& x : v) x = Scalar(x.flt() / mx);
  }
  v = reduce(std::move(v));
  size_t p = ncols_;
  if (ring_.backend == Backend::Float) {
    // largest entry as pivot
    double best = tol_;
    for (size_t j = 0; j < ncols_; ++j)
      if (std::fabs(v[j].flt()) > best) best = std::fabs(v[j].flt()), p = j;
  } else {
    for (size_t j = 0; j < ncols_; ++j)
      if (!v[j].is_zero()) {
        p = j;
        break;
      }
  }
  if (p == ncols_) return false;
  Scalar inv = ring_.one() / v[p];
  for (auto& x : v)
    if (!x.is_zero()) x = x * inv;
  v[p] = ring_.one();
  for (size_t j = 0; j < ncols_; ++j)
    if (ring_.backend == Backend::Float && j != p && std::fabs(v[j].flt()) <= 1e-15) v[j] = ring_.zero();
  for (auto& row : rows_) {
    const Scalar f = row[p];
    if (f.is_zero()) continue;
    for (size_t j = 0; j < ncols_; ++j)
      if (!v[j].is_zero()) row[j] -= f * v[j];
    row[p] = ring_.zero();
  }
  rows_.push_back(std::move(v));
  piv_.push_back(p);
  return true;
}

bool RowSpace::contains(const std::vector<Scalar>& v) const {
  auto r = reduce(v);
  for (const auto& x : r)
    if (!negligible(x)) return false;
  return true;
}

size_t rank(const Ring& r, const SMatrix& a) {
  if (a.empty()) return 0;
  RowSpace rs(r, a[0].size());
  for (const auto& row : a) rs.insert(row);
  return rs.rank();
}

std::vector<std::vector<Scalar>> nullspace(const Ring& r, const SMatrix& a) {
  size_t nc = a.empty() ? 0 : a[0].size();
  RowSpace rs(r, nc);
  for (const auto& row : a) rs.insert(row);
  std::vector<bool> is_piv(nc, false);
  const auto& pivcol = rs.pivots();
  for (size_t p : pivcol) is_piv[p] = true;
  std::vector<std::vector<Scalar>> out;
  for (size_t f = 0; f < nc; ++f) {
    if (is_piv[f]) continue;
    std::vector<Scalar> x(nc, r.zero());
    x[f] = r.one();
    for (size_t k = 0; k < rs.rows().size(); ++k) x[pivcol[k]] = -rs.rows()[k][f];
    out.push_back(std::move(x));
  }
  return out;
}

Scalar determinant(const Ring& r, SMatrix a) {
  size_t n = a.size();
  Scalar det = r.one();
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    if (r.backend == Backend::Float) {
      for (size_t i = c + 1; i < n; ++i)
        if (std::fabs(a[i][c].flt()) > std::fabs(a[p][c].flt())) p = i;
    } else {
      while (p < n && a[p][c].is_zero()) ++p;
    }
    if (p == n || a[p][c].is_zero()) return r.zero();
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det = det * a[c][c];
    Scalar inv = r.one() / a[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (a[i][c].is_zero()) continue;
      Scalar f = a[i][c] * inv;
      for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

}  // namespace tlg
