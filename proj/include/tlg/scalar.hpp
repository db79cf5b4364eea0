// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#pragma once

#include <gmpxx.h>

#include <string>
#include <variant>
#include <vector>

#include "tlg/errors.hpp"
#include "tlg/poly.hpp"

namespace tlg {

// Rational function in d, lowest terms, denominator lead > 0.
class RatFunc {
 public:
  RatFunc() : den_(ZPoly::constant(1)) {}
  explicit RatFunc(const ZPoly& num) : num_(num), den_(ZPoly::constant(1)) {}
  RatFunc(const ZPoly& num, const ZPoly& den);  // normalizes
  static RatFunc integer(long v) { return RatFunc(ZPoly::constant(v)); }
  static RatFunc d() { return RatFunc(ZPoly::monomial(1, 1)); }

  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

  double eval(double x) const { return num_.eval(x) / den_.eval(x); }
  std::string str() const;
  static RatFunc parse(const std::string& s);

 private:
  ZPoly num_, den_;
};

// Element of Q(delta), delta = 2cos(pi/(ell+2)), coordinates over 1, delta, ..., delta^(deg-1).
class QDelta {
 public:
  QDelta() = default;
  QDelta(int ell, std::vector<mpq_class> c);
  static QDelta integer(int ell, long v);
  static QDelta delta(int ell);

  static bool supported(int ell);
  static int degree(int ell);
  static const std::vector<long>& minpoly(int ell);  // monic, low to high
  static double delta_value(int ell);

  int ell() const { return ell_; }
  const std::vector<mpq_class>& coords() const { return c_; }
  bool is_zero() const;

  QDelta operator+(const QDelta& o) const;
  QDelta operator-(const QDelta& o) const;
  QDelta operator-() const;
  QDelta operator*(const QDelta& o) const;
  QDelta operator*(const mpq_class& k) const;
  QDelta inverse() const;
  QDelta operator/(const QDelta& o) const { return *this * o.inverse(); }
  bool operator==(const QDelta& o) const { return ell_ == o.ell_ && c_ == o.c_; }

  double to_double() const;
  std::string str() const;

 private:
  void check(const QDelta& o) const;
  int ell_ = 1;
  std::vector<mpq_class> c_;
};

enum class Backend { Generic, Special, Float };

class Scalar;

// Coefficient ring context: which backend and at which d.
struct Ring {
  Backend backend = Backend::Generic;
  int ell = 0;        // special: level
  double dval = 0.0;  // float: value of d

  static Ring generic() { return {Backend::Generic, 0, 0.0}; }
  static Ring special(int ell);
  static Ring floating(double d) { return {Backend::Float, 0, d}; }
  static Ring floating_special(int ell) { return floating(QDelta::delta_value(ell)); }

  Scalar zero() const;
  Scalar one() const;
  Scalar d() const;
  Scalar integer(long v) const;
  Scalar from_generic(const RatFunc& x) const;  // specialize / evaluate
  Scalar qint(int m) const;                     // quantum integer in this ring
  std::string name() const;
  bool operator==(const Ring& o) const {
    return backend == o.backend && ell == o.ell && dval == o.dval;
  }
};

class Scalar {
 public:
  Scalar() : v_(RatFunc()) {}
  explicit Scalar(RatFunc x) : v_(std::move(x)) {}
  explicit Scalar(QDelta x) : v_(std::move(x)) {}
  explicit Scalar(double x) : v_(x) {}

  Backend backend() const { return static_cast<Backend>(v_.index()); }
  const RatFunc& gen() const { return std::get<RatFunc>(v_); }
  const QDelta& spec() const { return std::get<QDelta>(v_); }
  double flt() const { return std::get<double>(v_); }

  bool is_zero() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  // exact equality; float uses relative tolerance 1e-9
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // generic needs the value of d; other backends ignore it
  double to_double(double d = 0.0) const;
  std::string str() const;

 private:
  void same(const Scalar& o) const;
  std::variant<RatFunc, QDelta, double> v_;
};

inline constexpr double kFloatRelTol = 1e-9;

// [m] as a generic scalar: polynomial in d, [-m] = -[m]
struct QuantumInteger {
  int m;
  Scalar value;
};
QuantumInteger quantum_integer(int m);

Scalar specialize(const Scalar& x, int ell);
Scalar pow(const Scalar& x, int k, const Ring& r);
Scalar parse_scalar(const std::string& s, const Ring& r);

}  // namespace tlg
