// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#include "tlg/poly.hpp"

#include <sstream>

#include "tlg/errors.hpp"

namespace tlg {

ZPoly::ZPoly(std::vector<mpz_class> c) : c_(std::move(c)) { trim(); }

ZPoly ZPoly::constant(const mpz_class& c) { return ZPoly(std::vector<mpz_class>{c}); }

ZPoly ZPoly::monomial(const mpz_class& c, int deg) {
  std::vector<mpz_class> v(deg + 1);
  v[deg] = c;
  return ZPoly(std::move(v));
}

void ZPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

mpz_class ZPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
  std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return ZPoly(std::move(r));
}

ZPoly ZPoly::operator-(const ZPoly& o) const {
  std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return ZPoly(std::move(r));
}

ZPoly ZPoly::operator-() const {
  ZPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
  if (is_zero() || o.is_zero()) return ZPoly();
  std::vector<mpz_class> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), c_[i].get_mpz_t(), o.c_[j].get_mpz_t());
  }
  return ZPoly(std::move(r));
}

ZPoly ZPoly::operator*(const mpz_class& k) const {
  if (sgn(k) == 0) return ZPoly();
  ZPoly r = *this;
  for (auto& x : r.c_) x *= k;
  return r;
}

ZPoly ZPoly::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<mpz_class> r(c_.size() + k);
  for (size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
  return ZPoly(std::move(r));
}

mpz_class ZPoly::content() const {
  mpz_class g = 0;
  for (const auto& x : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

ZPoly ZPoly::div_scalar(const mpz_class& k) const {
  ZPoly r = *this;
  for (auto& x : r.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
  return r;
}

ZPoly ZPoly::primitive() const {
  if (is_zero()) return *this;
  mpz_class g = content();
  return g == 1 ? *this : div_scalar(g);
}

ZPoly ZPoly::divexact(const ZPoly& o) const {
  if (o.is_zero()) fail(Err::Internal, "polynomial division by zero");
  if (is_zero()) return ZPoly();
  int dq = degree() - o.degree();
  if (dq < 0) fail(Err::Internal, "inexact polynomial division");
  std::vector<mpz_class> rem = c_, q(dq + 1);
  const mpz_class& lc = o.lead();
  for (int i = dq; i >= 0; --i) {
    mpz_class& top = rem[i + o.degree()];
    if (sgn(top) == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) fail(Err::Internal, "inexact polynomial division");
    mpz_class t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    q[i] = t;
    for (int j = 0; j <= o.degree(); ++j) rem[i + j] -= t * o.c_[j];
  }
  for (const auto& x : rem)
    if (sgn(x) != 0) fail(Err::Internal, "inexact polynomial division");
  return ZPoly(std::move(q));
}

ZPoly ZPoly::prem(const ZPoly& o) const {
  std::vector<mpz_class> r = c_;
  int db = o.degree();
  const mpz_class& lc = o.lead();
  while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
    int dr = static_cast<int>(r.size()) - 1;
    mpz_class t = r.back();
    for (auto& x : r) x *= lc;
    for (int j = 0; j <= db; ++j) r[dr - db + j] -= t * o.c_[j];
    while (!r.empty() && sgn(r.back()) == 0) r.pop_back();
  }
  return ZPoly(std::move(r));
}

double ZPoly::eval(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

std::string ZPoly::str(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& c = c_[i];
    if (sgn(c) == 0) continue;
    mpz_class a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? "-" : "+");
    }
    first = false;
    bool unit = (a == 1);
    if (i == 0 || !unit) os << a.get_str();
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

ZPoly gcd(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero()) return (!b.is_zero() && sgn(b.lead()) < 0) ? -b : b;
  if (b.is_zero()) return sgn(a.lead()) < 0 ? -a : a;
  mpz_class ca = a.content(), cb = b.content(), cg;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  ZPoly x = a.primitive(), y = b.primitive();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero() && y.degree() > 0) {
    ZPoly r = x.prem(y);
    x = y;
    y = r.primitive();
  }
  ZPoly g = y.is_zero() ? x : ZPoly::constant(1);
  g = g.primitive();
  if (sgn(g.lead()) < 0) g = -g;
  return g * cg;
}

}  // namespace tlg
