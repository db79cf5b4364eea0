// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#include "tlg/modular.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <sstream>

#include "tlg/errors.hpp"

namespace tlg {

const char* convention_name(SConvention c) { return c == SConvention::Shifted ? "shifted" : "unshifted"; }

double s_entry(int ell, int y, int x, SConvention c) {
  double k = ell + 2;
  double a = c == SConvention::Shifted ? double(x + 1) * (y + 1) : double(x) * y;
  // sqrt(2/k) makes S orthogonal and reproduces the displayed level-2 matrix;
  // the 2/sqrt(k) prefactor is the even-sector (SO(3)) normalization
  return std::sqrt(2.0 / k) * std::sin(M_PI * a / k);
}

DMatrix s_matrix(int ell, SConvention c) {
  DMatrix s(ell + 1, std::vector<double>(ell + 1));
  for (int y = 0; y <= ell; ++y)
    for (int x = 0; x <= ell; ++x) s[y][x] = s_entry(ell, y, x, c);
  return s;
}

int numeric_rank(const DMatrix& a, double rel_tol) {
  if (a.empty()) return 0;
  Eigen::MatrixXd m(a.size(), a[0].size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) m(i, j) = a[i][j];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  auto sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++r;
  return r;
}

namespace {
int ceil_div(int a, int b) { return (a + b - 1) / b; }

// Even labels a ~ ell - a form a simple-current orbit when ell is even. The
// current has twist exp(i pi ell / 2); only when that is 1 can the fixed
// point ell/2 be split, giving a resolved S. Returns its rank, or -1 when no
// resolution exists.
int resolved_even_rank(int ell) {
  if (ell % 2) return -1;
  std::complex<double> twist = std::polar(1.0, M_PI * ell / 2.0);
  if (std::abs(twist - 1.0) > 1e-12) return -1;
  auto S = [&](int a, int b) { return s_entry(ell, a, b, SConvention::Shifted); };
  int f = ell / 2;
  std::vector<int> reps;
  for (int a = 0; a < f; a += 2) reps.push_back(a);
  size_t n = reps.size() + 2;
  Eigen::MatrixXcd m(n, n);
  for (size_t i = 0; i < reps.size(); ++i) {
    for (size_t j = 0; j < reps.size(); ++j) m(i, j) = 2.0 * S(reps[i], reps[j]);
    m(i, n - 2) = m(i, n - 1) = m(n - 2, i) = m(n - 1, i) = S(reps[i], f);
  }
  // fill the 2x2 fixed block so that the whole matrix is unitary
  double rest = 0;
  for (int a : reps) rest += S(a, f) * S(a, f);
  double sff = S(f, f);
  double x2 = 0.5 * (1.0 - rest - 0.5 * sff * sff);
  std::complex<double> x(0.0, std::sqrt(std::max(0.0, x2)));
  m(n - 2, n - 2) = m(n - 1, n - 1) = 0.5 * sff + x;
  m(n - 2, n - 1) = m(n - 1, n - 2) = 0.5 * sff - x;
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  if ((m * m.adjoint() - id).norm() > 1e-9) return -1;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  auto sv = svd.singularValues();
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-9 * sv(0)) ++r;
  return r;
}
}  // namespace

LevelData level_data(int ell) {
  if (ell < 1 || ell > 16) fail(Err::ConfigInvalid, "level must be in 1..16");
  LevelData L;
  L.ell = ell;
  L.label_count = ceil_div(ell + 1, 2) * ceil_div(ell + 1, 2);
  L.color_reversing_count = ceil_div(ell, 2) * ceil_div(ell, 2);
  L.specific_heat = ceil_div((ell + 1) * (ell + 1), 2);
  L.s_full = s_matrix(ell, SConvention::Shifted);
  std::vector<int> ev;
  for (int a = 0; a <= ell; a += 2) ev.push_back(a);
  L.s_even.assign(ev.size(), std::vector<double>(ev.size()));
  for (size_t i = 0; i < ev.size(); ++i)
    for (size_t j = 0; j < ev.size(); ++j) L.s_even[i][j] = L.s_full[ev[i]][ev[j]];
  L.even_rank = numeric_rank(L.s_even);
  L.even_singular = L.even_rank < static_cast<int>(ev.size());
  L.resolved_rank = L.even_singular ? resolved_even_rank(ell) : L.even_rank;
  L.resolved_size = L.even_singular ? (ell / 2 + 1) / 2 + 2 : static_cast<int>(ev.size());
  L.nonsingular_utmf = !L.even_singular || (L.resolved_rank > 0 && L.resolved_rank == L.resolved_size);
  L.even_pair_count = static_cast<int>(ev.size() * ev.size());
  return L;
}

std::vector<LevelData> level_table(int ell_max) {
  std::vector<LevelData> v;
  for (int l = 1; l <= ell_max; ++l) v.push_back(level_data(l));
  return v;
}

std::string level_table_csv(const std::vector<LevelData>& t) {
  std::ostringstream o;
  o << "theory,dim_torus,labels,color_reversing,specific_heat,even_rank,even_size,even_singular,nonsingular_utmf\n";
  for (const auto& L : t)
    o << "DE" << L.ell << ',' << L.even_pair_count << ',' << L.label_count << ',' << L.color_reversing_count << ','
      << L.specific_heat << ',' << L.even_rank << ',' << L.s_even.size() << ',' << (L.even_singular ? "yes" : "no")
      << ',' << (L.nonsingular_utmf ? "yes" : "no") << '\n';
  return o.str();
}

double torus_dimension_estimate(int ell, int genus) {
  if (genus < 1) fail(Err::ConfigInvalid, "genus must be >= 1");
  if (genus == 1) {
    // Verlinde sum over even label pairs with exponent chi = 0: one per pair
    int ev = ell / 2 + 1;
    return static_cast<double>(ev * ev);
  }
  int chi = 2 - 2 * genus;
  double k = ell + 2;
  return std::pow(2.0 / std::sqrt(k) * std::sin(M_PI / k), chi);
}

}  // namespace tlg
