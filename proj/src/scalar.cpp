// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#include "tlg/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

namespace tlg {

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const ZPoly& num, const ZPoly& den) {
  if (den.is_zero()) fail(Err::Internal, "zero denominator");
  if (num.is_zero()) {
    den_ = ZPoly::constant(1);
    return;
  }
  if (den.degree() == 0 && den.lead() == 1) {
    num_ = num;
    den_ = den;
    return;
  }
  ZPoly g = gcd(num, den);
  num_ = num.divexact(g);
  den_ = den.divexact(g);
  if (sgn(den_.lead()) < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

static bool is_one(const ZPoly& p) { return p.degree() == 0 && p.lead() == 1; }

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (is_one(den_) && is_one(o.den_)) return RatFunc(num_ + o.num_);
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (is_zero() || o.is_zero()) return RatFunc();
  if (is_one(den_) && is_one(o.den_)) return RatFunc(num_ * o.num_);
  // cross-cancel keeps the gcd cheap
  ZPoly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
  ZPoly n = num_.divexact(g1) * o.num_.divexact(g2);
  ZPoly dd = den_.divexact(g2) * o.den_.divexact(g1);
  RatFunc r;
  r.num_ = n;
  r.den_ = dd;
  if (sgn(r.den_.lead()) < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) fail(Err::Internal, "division by zero rational function");
  RatFunc inv;
  inv.num_ = o.den_;
  inv.den_ = o.num_;
  if (sgn(inv.den_.lead()) < 0) {
    inv.num_ = -inv.num_;
    inv.den_ = -inv.den_;
  }
  return *this * inv;
}

std::string RatFunc::str() const {
  if (is_one(den_)) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

namespace {

struct PolyParser {
  const std::string& s;
  size_t i = 0;
  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  ZPoly poly() {
    ZPoly acc;
    bool any = false;
    for (;;) {
      ws();
      int sign = 1;
      if (eat('-')) sign = -1;
      else if (eat('+')) sign = 1;
      else if (any) break;
      ws();
      mpz_class c = 1;
      bool digits = false;
      size_t st = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i > st) {
        c = mpz_class(s.substr(st, i - st));
        digits = true;
      }
      int deg = 0;
      eat('*');
      ws();
      if (i < s.size() && s[i] == 'd') {
        ++i;
        deg = 1;
        if (eat('^')) {
          ws();
          size_t st2 = i;
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
          if (i == st2) fail(Err::ConfigInvalid, "bad exponent in '" + s + "'");
          deg = std::stoi(s.substr(st2, i - st2));
        }
      } else if (!digits) {
        fail(Err::ConfigInvalid, "cannot parse polynomial '" + s + "'");
      }
      acc = acc + ZPoly::monomial(c * sign, deg);
      any = true;
    }
    return acc;
  }
  ZPoly group() {
    if (eat('(')) {
      ZPoly p = poly();
      if (!eat(')')) fail(Err::ConfigInvalid, "missing ')' in '" + s + "'");
      return p;
    }
    return poly();
  }
};

}  // namespace

RatFunc RatFunc::parse(const std::string& s) {
  PolyParser p{s};
  ZPoly n = p.group();
  ZPoly d = ZPoly::constant(1);
  if (p.eat('/')) d = p.group();
  p.ws();
  if (p.i != s.size()) fail(Err::ConfigInvalid, "trailing input in '" + s + "'");
  if (d.is_zero()) fail(Err::ConfigInvalid, "zero denominator in '" + s + "'");
  return RatFunc(n, d);
}

// ---------------------------------------------------------------- QDelta

namespace {
// monic minimal polynomials of 2cos(pi/(ell+2)), low to high
const std::map<int, std::vector<long>>& minpolys() {
  static const std::map<int, std::vector<long>> t = {
      {1, {-1, 1}},
      {2, {-2, 0, 1}},
      {3, {-1, -1, 1}},
      {4, {-3, 0, 1}},
      {5, {1, -2, -1, 1}},
      {6, {2, 0, -4, 0, 1}},
  };
  return t;
}
}  // namespace

bool QDelta::supported(int ell) { return minpolys().count(ell) > 0; }

int QDelta::degree(int ell) {
  if (!supported(ell)) fail(Err::ConfigInvalid, "no exact field for level " + std::to_string(ell));
  return static_cast<int>(minpolys().at(ell).size()) - 1;
}

const std::vector<long>& QDelta::minpoly(int ell) {
  degree(ell);
  return minpolys().at(ell);
}

double QDelta::delta_value(int ell) { return 2.0 * std::cos(std::numbers::pi / (ell + 2)); }

QDelta::QDelta(int ell, std::vector<mpq_class> c) : ell_(ell), c_(std::move(c)) {
  int n = degree(ell);
  // reduce if longer than the field degree
  const auto& mp = minpoly(ell);
  for (int i = static_cast<int>(c_.size()) - 1; i >= n; --i) {
    mpq_class t = c_[i];
    if (sgn(t) == 0) continue;
    for (int j = 0; j <= n; ++j) c_[i - n + j] -= t * mp[j];
  }
  c_.resize(n);
}

QDelta QDelta::integer(int ell, long v) {
  std::vector<mpq_class> c(degree(ell));
  c[0] = v;
  return QDelta(ell, std::move(c));
}

QDelta QDelta::delta(int ell) {
  std::vector<mpq_class> c(2);
  c[1] = 1;
  return QDelta(ell, std::move(c));
}

bool QDelta::is_zero() const {
  for (const auto& x : c_)
    if (sgn(x) != 0) return false;
  return true;
}

void QDelta::check(const QDelta& o) const {
  if (ell_ != o.ell_) fail(Err::BackendMismatch, "mixing special fields of different levels");
}

QDelta QDelta::operator+(const QDelta& o) const {
  check(o);
  QDelta r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

QDelta QDelta::operator-(const QDelta& o) const {
  check(o);
  QDelta r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

QDelta QDelta::operator-() const {
  QDelta r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

QDelta QDelta::operator*(const QDelta& o) const {
  check(o);
  std::vector<mpq_class> p(c_.size() + o.c_.size());
  for (size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) p[i + j] += c_[i] * o.c_[j];
  }
  return QDelta(ell_, std::move(p));
}

QDelta QDelta::operator*(const mpq_class& k) const {
  QDelta r = *this;
  for (auto& x : r.c_) x *= k;
  return r;
}

QDelta QDelta::inverse() const {
  if (is_zero()) fail(Err::PoleAtSpecialValue, "division by zero in Q(delta), level " + std::to_string(ell_));
  int n = static_cast<int>(c_.size());
  // columns: this * delta^j
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n + 1));
  QDelta col = *this;
  QDelta dl = n > 1 ? delta(ell_) : integer(ell_, 1);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) a[i][j] = col.c_[i];
    if (j + 1 < n) col = col * dl;
  }
  a[0][n] = 1;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && sgn(a[piv][c]) == 0) ++piv;
    std::swap(a[c], a[piv]);
    mpq_class inv = 1 / a[c][c];
    for (int k = c; k <= n; ++k) a[c][k] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || sgn(a[r][c]) == 0) continue;
      mpq_class f = a[r][c];
      for (int k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<mpq_class> y(n);
  for (int i = 0; i < n; ++i) y[i] = a[i][n];
  return QDelta(ell_, std::move(y));
}

double QDelta::to_double() const {
  double dv = delta_value(ell_), acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * dv + it->get_d();
  return acc;
}

std::string QDelta::str() const {
  std::ostringstream os;
  os << "(ell=" << ell_ << ")[";
  for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i].get_str();
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------- Ring

Ring Ring::special(int ell) {
  QDelta::degree(ell);
  return {Backend::Special, ell, 0.0};
}

Scalar Ring::zero() const { return integer(0); }
Scalar Ring::one() const { return integer(1); }

Scalar Ring::integer(long v) const {
  switch (backend) {
    case Backend::Generic: return Scalar(RatFunc::integer(v));
    case Backend::Special: return Scalar(QDelta::integer(ell, v));
    case Backend::Float: return Scalar(static_cast<double>(v));
  }
  return Scalar();
}

Scalar Ring::d() const {
  switch (backend) {
    case Backend::Generic: return Scalar(RatFunc::d());
    case Backend::Special: return Scalar(QDelta::delta(ell));
    case Backend::Float: return Scalar(dval);
  }
  return Scalar();
}

static QDelta eval_in_field(const ZPoly& p, int ell) {
  QDelta acc = QDelta::integer(ell, 0), dl = QDelta::delta(ell);
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    std::vector<mpq_class> k(QDelta::degree(ell));
    k[0] = *it;
    acc = acc * dl + QDelta(ell, std::move(k));
  }
  return acc;
}

Scalar Ring::from_generic(const RatFunc& x) const {
  switch (backend) {
    case Backend::Generic: return Scalar(x);
    case Backend::Special: {
      QDelta den = eval_in_field(x.den(), ell);
      if (den.is_zero())
        fail(Err::PoleAtSpecialValue, "denominator " + x.den().str() + " vanishes at level " + std::to_string(ell));
      return Scalar(eval_in_field(x.num(), ell) / den);
    }
    case Backend::Float: {
      double den = x.den().eval(dval);
      if (den == 0.0) fail(Err::PoleAtSpecialValue, "denominator vanishes at d=" + std::to_string(dval));
      return Scalar(x.num().eval(dval) / den);
    }
  }
  return Scalar();
}

Scalar Ring::qint(int m) const {
  if (m < 0) return -qint(-m);
  Scalar a = zero(), b = one(), dd = d();
  if (m == 0) return a;
  for (int k = 1; k < m; ++k) {
    Scalar c = dd * b - a;
    a = b;
    b = c;
  }
  return b;
}

std::string Ring::name() const {
  switch (backend) {
    case Backend::Generic: return "generic";
    case Backend::Special: return "special(ell=" + std::to_string(ell) + ")";
    case Backend::Float: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "float(d=%.17g)", dval);
      return buf;
    }
  }
  return "?";
}

// ---------------------------------------------------------------- Scalar

void Scalar::same(const Scalar& o) const {
  if (v_.index() != o.v_.index()) fail(Err::BackendMismatch, "scalar backends differ");
}

bool Scalar::is_zero() const {
  switch (backend()) {
    case Backend::Generic: return gen().is_zero();
    case Backend::Special: return spec().is_zero();
    case Backend::Float: return flt() == 0.0;
  }
  return false;
}

Scalar Scalar::operator+(const Scalar& o) const {
  same(o);
  switch (backend()) {
    case Backend::Generic: return Scalar(gen() + o.gen());
    case Backend::Special: return Scalar(spec() + o.spec());
    case Backend::Float: return Scalar(flt() + o.flt());
  }
  return Scalar();
}

Scalar Scalar::operator-(const Scalar& o) const {
  same(o);
  switch (backend()) {
    case Backend::Generic: return Scalar(gen() - o.gen());
    case Backend::Special: return Scalar(spec() - o.spec());
    case Backend::Float: return Scalar(flt() - o.flt());
  }
  return Scalar();
}

Scalar Scalar::operator-() const {
  switch (backend()) {
    case Backend::Generic: return Scalar(-gen());
    case Backend::Special: return Scalar(-spec());
    case Backend::Float: return Scalar(-flt());
  }
  return Scalar();
}

Scalar Scalar::operator*(const Scalar& o) const {
  same(o);
  switch (backend()) {
    case Backend::Generic: return Scalar(gen() * o.gen());
    case Backend::Special: return Scalar(spec() * o.spec());
    case Backend::Float: return Scalar(flt() * o.flt());
  }
  return Scalar();
}

Scalar Scalar::operator/(const Scalar& o) const {
  same(o);
  switch (backend()) {
    case Backend::Generic:
      if (o.is_zero()) fail(Err::PoleAtSpecialValue, "division by the zero rational function");
      return Scalar(gen() / o.gen());
    case Backend::Special: return Scalar(spec() / o.spec());
    case Backend::Float:
      if (o.flt() == 0.0) fail(Err::PoleAtSpecialValue, "float division by zero");
      return Scalar(flt() / o.flt());
  }
  return Scalar();
}

bool Scalar::operator==(const Scalar& o) const {
  same(o);
  switch (backend()) {
    case Backend::Generic: return gen() == o.gen();
    case Backend::Special: return spec() == o.spec();
    case Backend::Float: {
      double a = flt(), b = o.flt();
      double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
      return std::fabs(a - b) <= kFloatRelTol * scale;
    }
  }
  return false;
}

double Scalar::to_double(double d) const {
  switch (backend()) {
    case Backend::Generic: return gen().eval(d);
    case Backend::Special: return spec().to_double();
    case Backend::Float: return flt();
  }
  return 0.0;
}

std::string Scalar::str() const {
  switch (backend()) {
    case Backend::Generic: return gen().str();
    case Backend::Special: return spec().str();
    case Backend::Float: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", flt());
      return buf;
    }
  }
  return "";
}

QuantumInteger quantum_integer(int m) { return {m, Ring::generic().qint(m)}; }

Scalar specialize(const Scalar& x, int ell) {
  if (x.backend() != Backend::Generic) fail(Err::BackendMismatch, "specialize expects a generic scalar");
  return Ring::special(ell).from_generic(x.gen());
}

Scalar pow(const Scalar& x, int k, const Ring& r) {
  if (k < 0) return pow(r.one() / x, -k, r);
  Scalar acc = r.one(), b = x;
  while (k) {
    if (k & 1) acc = acc * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return acc;
}

Scalar parse_scalar(const std::string& s, const Ring& r) {
  switch (r.backend) {
    case Backend::Generic: return Scalar(RatFunc::parse(s));
    case Backend::Float: {
      try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos == s.size()) return Scalar(v);
      } catch (const std::exception&) {
      }
      return r.from_generic(RatFunc::parse(s));
    }
    case Backend::Special: {
      auto lb = s.find('[');
      if (s.rfind("(ell=", 0) == 0 && lb != std::string::npos && s.back() == ']') {
        int ell = std::stoi(s.substr(5, s.find(')') - 5));
        if (ell != r.ell) fail(Err::BackendMismatch, "level mismatch in '" + s + "'");
        std::vector<mpq_class> c;
        std::stringstream ss(s.substr(lb + 1, s.size() - lb - 2));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          mpq_class q(tok);
          q.canonicalize();
          c.push_back(q);
        }
        return Scalar(QDelta(ell, std::move(c)));
      }
      return r.from_generic(RatFunc::parse(s));
    }
  }
  return Scalar();
}

}  // namespace tlg
