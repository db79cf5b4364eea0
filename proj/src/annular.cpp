// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#include "tlg/annular.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tlg/linalg.hpp"

namespace tlg {

namespace {
bool float_ring(const Ring& r) { return r.backend == Backend::Float; }
constexpr double kTrimRel = 1e-11;
}  // namespace

RPolynomial::RPolynomial(const Ring& r, std::vector<Scalar> c) : ring_(r), c_(std::move(c)) { trim(); }

RPolynomial RPolynomial::monomial(const Ring& r, int k, const Scalar& c) {
  std::vector<Scalar> v(k + 1, r.zero());
  v[k] = c;
  return RPolynomial(r, std::move(v));
}

void RPolynomial::trim() {
  if (float_ring(ring_)) {
    double mx = 0;
    for (const auto& x : c_) mx = std::max(mx, std::abs(x.flt()));
    while (!c_.empty() && std::abs(c_.back().flt()) <= kTrimRel * std::max(mx, 1e-300)) c_.pop_back();
    if (mx == 0.0) c_.clear();
    return;
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar RPolynomial::coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : ring_.zero(); }

RPolynomial RPolynomial::operator+(const RPolynomial& o) const {
  std::vector<Scalar> v(std::max(c_.size(), o.c_.size()), ring_.zero());
  for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
  return RPolynomial(ring_, std::move(v));
}

RPolynomial RPolynomial::operator-(const RPolynomial& o) const { return *this + o * ring_.integer(-1); }

RPolynomial RPolynomial::operator*(const RPolynomial& o) const {
  if (is_zero() || o.is_zero()) return RPolynomial(ring_);
  std::vector<Scalar> v(c_.size() + o.c_.size() - 1, ring_.zero());
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  return RPolynomial(ring_, std::move(v));
}

RPolynomial RPolynomial::operator*(const Scalar& s) const {
  std::vector<Scalar> v = c_;
  for (auto& x : v) x *= s;
  return RPolynomial(ring_, std::move(v));
}

bool RPolynomial::operator==(const RPolynomial& o) const {
  if (c_.size() != o.c_.size()) return false;
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

RPolynomial RPolynomial::monic() const {
  if (is_zero()) return *this;
  return *this * (ring_.one() / lead());
}

RPolynomial RPolynomial::shifted(int k) const {
  if (is_zero()) return *this;
  std::vector<Scalar> v(k, ring_.zero());
  v.insert(v.end(), c_.begin(), c_.end());
  return RPolynomial(ring_, std::move(v));
}

RPolynomial RPolynomial::mod(const RPolynomial& g) const {
  if (g.is_zero()) fail(Err::Internal, "reduction by the zero polynomial");
  std::vector<Scalar> r = c_;
  int dg = g.degree();
  Scalar gl = g.lead();
  while (static_cast<int>(r.size()) - 1 >= dg) {
    int k = static_cast<int>(r.size()) - 1 - dg;
    Scalar f = r.back() / gl;
    for (int i = 0; i < dg; ++i) r[k + i] -= f * g.c_[i];
    r.pop_back();  // cancels by construction
    if (!float_ring(ring_))
      while (!r.empty() && r.back().is_zero()) r.pop_back();
  }
  return RPolynomial(ring_, std::move(r));
}

Scalar RPolynomial::eval(const Scalar& x) const {
  Scalar acc = ring_.zero();
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

double RPolynomial::eval_double(double x) const {
  double d = ring_.backend == Backend::Special ? QDelta::delta_value(ring_.ell) : ring_.dval;
  double acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].to_double(d);
  return acc;
}

RPolynomial RPolynomial::to_float() const {
  if (float_ring(ring_)) return *this;
  double d = 0;
  Ring fr = Ring::floating(0);
  if (ring_.backend == Backend::Special) {
    d = QDelta::delta_value(ring_.ell);
    fr = Ring::floating_special(ring_.ell);
  } else {
    fail(Err::BackendMismatch, "generic polynomial has no float image without a value of d");
  }
  std::vector<Scalar> v;
  for (const auto& x : c_) v.emplace_back(x.to_double(d));
  return RPolynomial(fr, std::move(v));
}

std::vector<std::complex<double>> RPolynomial::roots() const {
  RPolynomial f = to_float().monic();
  int n = f.degree();
  if (n <= 0) return {};
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -f.c_[i].flt();
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
  std::vector<std::complex<double>> out;
  for (int i = 0; i < n; ++i) {
    // a couple of Newton steps to polish
    std::complex<double> z = es.eigenvalues()(i);
    for (int it = 0; it < 3; ++it) {
      std::complex<double> p = 0, dp = 0;
      for (int k = n; k >= 0; --k) {
        dp = dp * z + p;
        p = p * z + f.coeff(k).flt();
      }
      if (std::abs(dp) < 1e-300) break;
      z -= p / dp;
    }
    out.push_back(z);
  }
  std::sort(out.begin(), out.end(), [](auto a, auto b) { return a.real() < b.real(); });
  return out;
}

std::string RPolynomial::str() const {
  if (is_zero()) return "0";
  std::ostringstream o;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) o << " + ";
    first = false;
    o << '(' << c_[i].str() << ')';
    if (i == 1) o << "*R";
    if (i > 1) o << "*R^" << i;
  }
  return o.str();
}

RPolynomial gcd(const RPolynomial& a, const RPolynomial& b) {
  if (a.ring().backend == Backend::Generic) fail(Err::BackendMismatch, "polynomial gcd needs a field of constants");
  RPolynomial x = a, y = b;
  while (!y.is_zero()) {
    RPolynomial r = x.mod(y);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::pair<int, int> annular_loops(const Diagram& d) {
  if (d.m != d.n) fail(Err::SignatureMismatch, "annular closure needs a square diagram");
  int n = d.n;
  std::vector<char> seen(2 * n, 0);
  int triv = 0, ess = 0;
  for (int s = 0; s < 2 * n; ++s) {
    if (seen[s]) continue;
    int cur = s, w = 0;
    do {
      seen[cur] = 1;
      int q = d.p[cur];
      seen[q] = 1;
      // around the core: bottom copy to top copy is +1
      if (q < n) {
        cur = q + n;
        w -= 1;
      } else {
        cur = q - n;
        w += 1;
      }
    } while (cur != s);
    if (w == 0)
      ++triv;
    else if (w == 1 || w == -1)
      ++ess;
    else
      fail(Err::Internal, "closure loop with winding " + std::to_string(w));
  }
  return {triv, ess};
}

RPolynomial annular_closure(const Morphism& a) {
  if (a.m() != a.n()) fail(Err::SignatureMismatch, "annular closure needs a square morphism");
  const Ring& r = a.ring();
  std::vector<Scalar> c;
  for (const auto& [dg, k] : a.terms()) {
    auto [t, e] = annular_loops(dg);
    if (static_cast<int>(c.size()) <= e) c.resize(e + 1, r.zero());
    c[e] += k * pow(r.d(), t, r);
  }
  return RPolynomial(r, std::move(c));
}

AnnularIdeal annular_ideal(int ell, int grade_cap) {
  if (grade_cap < ell + 1) fail(Err::ConfigInvalid, "grade cap below ell + 1");
  Ring r = Ring::special(ell);
  const Morphism& p = jones_wenzl(r, ell + 1);
  AnnularIdeal id;
  id.ell = ell;
  id.grade_cap = grade_cap;
  RPolynomial g(r);
  int k = ell + 1;
  for (int m = k; m <= grade_cap; ++m) {
    for (int i = 0; i + k <= m; ++i) {
      Morphism y = p;
      if (i > 0) y = tensor(Morphism::identity(r, i), y);
      if (m - k - i > 0) y = tensor(y, Morphism::identity(r, m - k - i));
      for (const auto& z : enumerate_diagrams(m, m)) {
        RPolynomial c = annular_closure(compose(y, Morphism(r, z)));
        ++id.closures;
        g = g.is_zero() ? c.monic() : gcd(g, c);
      }
    }
  }
  id.generator = g.is_zero() ? RPolynomial(r) : g;
  return id;
}

double ring_eigenvalue(int ell, int p) {
  std::complex<double> A = std::complex<double>(0, 1) * std::polar(1.0, M_PI / (2.0 * ell + 4.0));
  std::complex<double> v = -(std::pow(A, 2 * p + 2) + std::pow(A, -2 * p - 2));
  return v.real();
}

bool roots_match_family(const AnnularIdeal& id, double tol, double* max_err) {
  auto rs = id.generator.roots();
  int deg = static_cast<int>(rs.size());
  // smallest p-range 0..P-1 whose distinct values number deg
  std::vector<double> fam;
  for (int P = 1; P <= 4 * (id.ell + 2); ++P) {
    fam.clear();
    for (int p = 0; p < P; ++p) {
      double v = ring_eigenvalue(id.ell, p);
      bool dup = false;
      for (double u : fam) dup = dup || std::abs(u - v) < tol;
      if (!dup) fam.push_back(v);
    }
    if (static_cast<int>(fam.size()) >= deg) break;
  }
  if (static_cast<int>(fam.size()) != deg) return false;
  std::vector<char> used(deg, 0);
  double worst = 0;
  for (const auto& z : rs) {
    int best = -1;
    double be = 1e300;
    for (int j = 0; j < deg; ++j)
      if (!used[j] && std::abs(z - fam[j]) < be) be = std::abs(z - fam[j]), best = j;
    used[best] = 1;
    worst = std::max(worst, be);
  }
  if (max_err) *max_err = worst;
  return worst <= tol;
}

int beta_count(int ell) { return (ell + 2) / 2 + 1; }

RPolynomial beta_projector(int n, int ell, SConvention c, const RPolynomial& generator, bool label_rings) {
  int top = (ell + 2) / 2;
  if (n < 0 || n > top) fail(Err::IndexOutOfRange, "beta index out of range");
  Ring fr = Ring::floating_special(ell);
  RPolynomial b(fr);
  if (!label_rings) {
    std::vector<Scalar> v;
    for (int x = 0; x <= top; ++x) v.emplace_back(s_entry(ell, 2 * n, 2 * x, c));
    b = RPolynomial(fr, std::move(v));
  } else {
    // U_0 = 1, U_1 = R, U_{k+1} = R U_k - U_{k-1}
    RPolynomial R = RPolynomial::monomial(fr, 1, fr.one());
    std::vector<RPolynomial> u{RPolynomial::monomial(fr, 0, fr.one()), R};
    while (static_cast<int>(u.size()) <= 2 * top) u.push_back(R * u.back() - u[u.size() - 2]);
    for (int x = 0; x <= top; ++x) b = b + u[2 * x] * Scalar(s_entry(ell, 2 * n, 2 * x, c));
  }
  return b.mod(generator.to_float());
}

namespace {
double max_abs(const RPolynomial& p) {
  double m = 0;
  for (const auto& x : p.coeffs()) m = std::max(m, std::abs(x.flt()));
  return m;
}
}  // namespace

BetaReport check_betas(int ell, SConvention c, const AnnularIdeal& id, double tol, bool label_rings) {
  BetaReport rep;
  rep.convention = c;
  RPolynomial g = id.generator.to_float();
  rep.quotient_dim = g.degree();
  std::vector<RPolynomial> bs;
  for (int n = 0; n < beta_count(ell); ++n) bs.push_back(beta_projector(n, ell, c, id.generator, label_rings));
  double scale = 0;
  for (const auto& b : bs) scale = std::max(scale, max_abs(b));
  if (scale == 0) scale = 1;
  for (size_t i = 0; i < bs.size(); ++i) {
    if (bs[i].is_zero() || max_abs(bs[i]) <= tol * scale) rep.nonzero = false;
    for (size_t j = i + 1; j < bs.size(); ++j)
      if (max_abs((bs[i] * bs[j]).mod(g)) > tol * scale * scale) rep.orthogonal = false;
    RPolynomial sq = (bs[i] * bs[i]).mod(g);
    // least-squares scalar with sq = c b
    double num = 0, den = 0;
    for (int k = 0; k <= std::max(sq.degree(), bs[i].degree()); ++k) {
      double a = sq.coeff(k).flt(), b = bs[i].coeff(k).flt();
      num += a * b;
      den += b * b;
    }
    double cn = den > 0 ? num / den : 0.0;
    rep.scalars.push_back(cn);
    if (max_abs(sq - bs[i] * Scalar(cn)) > tol * scale * scale) rep.idempotent = false;
    if (!bs[i].is_zero() && std::abs(cn) <= tol * scale) rep.idempotent = false;
  }
  DMatrix m;
  for (const auto& b : bs) {
    std::vector<double> row(std::max(rep.quotient_dim, 1), 0.0);
    for (int k = 0; k < rep.quotient_dim; ++k) row[k] = b.coeff(k).flt();
    m.push_back(row);
  }
  rep.rank = numeric_rank(m, tol);
  rep.spans = rep.rank == rep.quotient_dim;
  return rep;
}

std::string annular_report_json(int ell, int grade_cap) {
  AnnularIdeal id = annular_ideal(ell, grade_cap);
  nlohmann::json j;
  j["ell"] = ell;
  j["grade_cap"] = grade_cap;
  j["closures"] = id.closures;
  j["generator"] = nlohmann::json::array();
  for (const auto& x : id.generator.coeffs()) j["generator"].push_back(x.str());
  j["generator_str"] = id.generator.str();
  j["roots"] = nlohmann::json::array();
  for (const auto& z : id.generator.roots()) j["roots"].push_back({z.real(), z.imag()});
  double err = 0;
  j["roots_match_family"] = roots_match_family(id, 1e-9, &err);
  j["roots_max_error"] = err;
  j["beta"] = nlohmann::json::array();
  std::string chosen;
  for (SConvention c : {SConvention::Unshifted, SConvention::Shifted}) {
    BetaReport b = check_betas(ell, c, id);
    nlohmann::json bj{{"convention", convention_name(c)}, {"orthogonal", b.orthogonal},
                      {"idempotent", b.idempotent},       {"spans", b.spans},
                      {"all_nonzero", b.nonzero},         {"rank", b.rank},
                      {"quotient_dim", b.quotient_dim},   {"scalars", b.scalars}};
    bj["table"] = nlohmann::json::array();
    for (int n = 0; n < beta_count(ell); ++n) {
      auto bp = beta_projector(n, ell, c, id.generator);
      std::vector<double> cs;
      for (const auto& x : bp.coeffs()) cs.push_back(x.flt());
      bj["table"].push_back(cs);
    }
    j["beta"].push_back(bj);
    if (b.ok() && chosen.empty()) chosen = convention_name(c);
  }
  // diagnostic only, never used to pick the convention
  j["label_ring_reading"] = nlohmann::json::array();
  for (SConvention c : {SConvention::Unshifted, SConvention::Shifted}) {
    BetaReport b = check_betas(ell, c, id, 1e-9, true);
    j["label_ring_reading"].push_back({{"convention", convention_name(c)}, {"orthogonal", b.orthogonal},
                                       {"idempotent", b.idempotent}, {"spans", b.spans}, {"rank", b.rank},
                                       {"scalars", b.scalars}});
  }
  j["convention"] = chosen.empty() ? nlohmann::json(nullptr) : nlohmann::json(chosen);
  std::vector<std::string> flags;
  if (chosen.empty())
    flags.push_back("no S-matrix convention makes the beta combinations orthogonal idempotents at level " +
                    std::to_string(ell));
  if (!j["roots_match_family"].get<bool>())
    flags.push_back("annular ideal generator roots do not match the -(A^(2p+2)+A^(-2p-2)) family at level " +
                    std::to_string(ell));
  if (!flags.empty()) j["flags"] = flags;
  return j.dump();
}

}  // namespace tlg
