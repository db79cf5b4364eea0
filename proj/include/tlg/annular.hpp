// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#pragma once

#include <complex>
#include <string>
#include <vector>

#include "tlg/modular.hpp"
#include "tlg/tl.hpp"

namespace tlg {

// Polynomial in the essential ring R; c[k] multiplies R^k.
class RPolynomial {
 public:
  explicit RPolynomial(const Ring& r) : ring_(r) {}
  RPolynomial(const Ring& r, std::vector<Scalar> c);
  static RPolynomial monomial(const Ring& r, int k, const Scalar& c);

  const Ring& ring() const { return ring_; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Scalar coeff(int k) const;
  Scalar lead() const { return c_.back(); }

  RPolynomial operator+(const RPolynomial& o) const;
  RPolynomial operator-(const RPolynomial& o) const;
  RPolynomial operator*(const RPolynomial& o) const;
  RPolynomial operator*(const Scalar& s) const;
  bool operator==(const RPolynomial& o) const;

  RPolynomial monic() const;
  RPolynomial mod(const RPolynomial& g) const;
  RPolynomial shifted(int k) const;  // times R^k
  Scalar eval(const Scalar& x) const;
  double eval_double(double x) const;
  std::vector<std::complex<double>> roots() const;
  RPolynomial to_float() const;
  std::string str() const;

 private:
  void trim();
  Ring ring_;
  std::vector<Scalar> c_;
};

RPolynomial gcd(const RPolynomial& a, const RPolynomial& b);

// Closure in the annulus: top point i is joined to bottom point i around the
// core. Contractible loops give d, essential ones give R.
RPolynomial annular_closure(const Morphism& a);
// number of contractible and essential loops of a single diagram
std::pair<int, int> annular_loops(const Diagram& d);

struct AnnularIdeal {
  int ell = 0;
  int grade_cap = 0;
  RPolynomial generator{Ring::generic()};
  size_t closures = 0;
};

AnnularIdeal annular_ideal(int ell, int grade_cap);

// (-1)^p 2cos((p+1)pi/(ell+2)) = -(A^(2p+2) + A^(-2p-2)), A = i exp(i pi/(2ell+4))
double ring_eigenvalue(int ell, int p);
// root set of the generator vs the family for p = 0..deg-1, matched greedily
bool roots_match_family(const AnnularIdeal& id, double tol, double* max_err = nullptr);

int beta_count(int ell);  // floor((ell+2)/2) + 1 projectors, n = 0..floor((ell+2)/2)
// label_rings: diagnostic reading with R^x replaced by the label-x ring
// (Chebyshev U_x(R)); the stated combination uses plain powers
RPolynomial beta_projector(int n, int ell, SConvention c, const RPolynomial& generator, bool label_rings = false);

struct BetaReport {
  SConvention convention;
  bool orthogonal = true, idempotent = true, spans = true, nonzero = true;
  int rank = 0, quotient_dim = 0;
  std::vector<double> scalars;  // beta_n^2 = c_n beta_n
  bool ok() const { return orthogonal && idempotent && spans && nonzero; }
};
BetaReport check_betas(int ell, SConvention c, const AnnularIdeal& id, double tol = 1e-9, bool label_rings = false);

std::string annular_report_json(int ell, int grade_cap);

}  // namespace tlg
