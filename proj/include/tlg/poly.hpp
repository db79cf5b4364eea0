// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace tlg {

// Integer polynomial, coefficient i multiplies x^i. Always trimmed.
class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(std::vector<mpz_class> c);
  static ZPoly constant(const mpz_class& c);
  static ZPoly monomial(const mpz_class& c, int deg);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  const mpz_class& lead() const { return c_.back(); }
  mpz_class coeff(int i) const;

  ZPoly operator+(const ZPoly& o) const;
  ZPoly operator-(const ZPoly& o) const;
  ZPoly operator-() const;
  ZPoly operator*(const ZPoly& o) const;
  ZPoly operator*(const mpz_class& k) const;
  ZPoly shifted(int k) const;  // times x^k
  bool operator==(const ZPoly& o) const { return c_ == o.c_; }
  bool operator!=(const ZPoly& o) const { return !(*this == o); }

  mpz_class content() const;  // nonnegative gcd of coefficients
  ZPoly primitive() const;    // divided by content, sign kept
  ZPoly div_scalar(const mpz_class& k) const;  // exact

  // exact quotient over Z; throws if o does not divide *this
  ZPoly divexact(const ZPoly& o) const;
  // pseudo remainder: lc(o)^k * this = q*o + r
  ZPoly prem(const ZPoly& o) const;

  double eval(double x) const;
  std::string str(const char* var = "d") const;

 private:
  void trim();
  std::vector<mpz_class> c_;
};

ZPoly gcd(const ZPoly& a, const ZPoly& b);  // content-correct, lead positive

}  // namespace tlg
