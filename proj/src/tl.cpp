// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#include "tlg/tl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "tlg/linalg.hpp"

namespace tlg {

// ---------------------------------------------------------------- diagrams

namespace {
// position of point i on the boundary circle: top left->right, then bottom right->left
inline int circ(int m, int n, int i) { return i < m ? i : m + (n - 1 - (i - m)); }
inline int uncirc(int m, int n, int c) { return c < m ? c : m + (n - 1 - (c - m)); }
}  // namespace

int Diagram::through_strands() const {
  int t = 0;
  for (int i = 0; i < m; ++i)
    if (p[i] >= m) ++t;
  return t;
}

bool Diagram::valid() const {
  int N = m + n;
  if (N % 2 || static_cast<int>(p.size()) != N) return false;
  for (int i = 0; i < N; ++i)
    if (p[i] >= N || p[i] == i || p[p[i]] != i) return false;
  // balanced parentheses in circle order
  std::vector<int> at(N);
  for (int i = 0; i < N; ++i) at[circ(m, n, i)] = i;
  std::vector<int> st;
  for (int c = 0; c < N; ++c) {
    int i = at[c];
    int pc = circ(m, n, p[i]);
    if (pc > c) {
      st.push_back(pc);
    } else {
      if (st.empty() || st.back() != c) return false;
      st.pop_back();
    }
  }
  return st.empty();
}

std::string Diagram::str() const {
  std::ostringstream os;
  os << "(" << m << "," << n << ")[";
  for (size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << int(p[i]);
  os << "]";
  return os.str();
}

Diagram Diagram::identity(int n) {
  Diagram d;
  d.m = d.n = n;
  d.p.resize(2 * n);
  for (int i = 0; i < n; ++i) {
    d.p[i] = static_cast<uint8_t>(n + i);
    d.p[n + i] = static_cast<uint8_t>(i);
  }
  return d;
}

Diagram Diagram::U(int n, int i) {
  if (i < 1 || i >= n) fail(Err::IndexOutOfRange, "U_i needs 1 <= i < n");
  Diagram d = identity(n);
  int a = i - 1, b = i;
  d.p[a] = static_cast<uint8_t>(b);
  d.p[b] = static_cast<uint8_t>(a);
  d.p[n + a] = static_cast<uint8_t>(n + b);
  d.p[n + b] = static_cast<uint8_t>(n + a);
  return d;
}

Diagram Diagram::cup() { return Diagram{2, 0, {1, 0}}; }
Diagram Diagram::cap() { return Diagram{0, 2, {1, 0}}; }

Diagram Diagram::from_pairing(int m, int n, std::vector<uint8_t> p) {
  Diagram d{m, n, std::move(p)};
  if (!d.valid()) fail(Err::ConfigInvalid, "not a noncrossing pairing: " + d.str());
  return d;
}

Diagram compose(const Diagram& a, const Diagram& b, int* loops) {
  if (b.n != a.m) fail(Err::SignatureMismatch, "compose: inner signatures differ");
  const int l = b.m, m = a.m, n = a.n;
  Diagram r;
  r.m = l;
  r.n = n;
  r.p.assign(l + n, 0);
  uint8_t mid_seen_buf[64];
  std::vector<uint8_t> big;
  uint8_t* mid = mid_seen_buf;
  if (m > 64) {
    big.assign(m, 0);
    mid = big.data();
  } else {
    std::fill(mid, mid + m, 0);
  }
  // follow from a point of b (index into b) / of a (index into a)
  auto from_b = [&](int q) -> int {
    for (;;) {
      if (q < l) return q;
      int j = q - l;
      mid[j] = 1;
      int t = a.p[j];
      if (t >= m) return l + (t - m);
      mid[t] = 1;
      q = b.p[l + t];
    }
  };
  for (int x = 0; x < l; ++x) r.p[x] = static_cast<uint8_t>(from_b(b.p[x]));
  for (int y = 0; y < n; ++y) {
    int t = a.p[m + y];
    int end;
    if (t >= m) {
      end = l + (t - m);
    } else {
      mid[t] = 1;
      end = from_b(b.p[l + t]);
    }
    r.p[l + y] = static_cast<uint8_t>(end);
  }
  int c = 0;
  for (int j = 0; j < m; ++j) {
    if (mid[j]) continue;
    ++c;
    int k = j;
    while (!mid[k]) {
      mid[k] = 1;
      int t = a.p[k];  // stays in the middle
      mid[t] = 1;
      k = b.p[l + t] - l;
    }
  }
  if (loops) *loops = c;
  return r;
}

Diagram tensor(const Diagram& a, const Diagram& b) {
  const int M = a.m + b.m, N = a.n + b.n;
  auto ma = [&](int i) { return i < a.m ? i : M + (i - a.m); };
  auto mb = [&](int i) { return i < b.m ? a.m + i : M + a.n + (i - b.m); };
  Diagram r;
  r.m = M;
  r.n = N;
  r.p.assign(M + N, 0);
  for (int i = 0; i < a.size(); ++i) r.p[ma(i)] = static_cast<uint8_t>(ma(a.p[i]));
  for (int i = 0; i < b.size(); ++i) r.p[mb(i)] = static_cast<uint8_t>(mb(b.p[i]));
  return r;
}

Diagram bar(const Diagram& a) {
  auto f = [&](int i) { return i < a.m ? a.n + i : i - a.m; };
  Diagram r;
  r.m = a.n;
  r.n = a.m;
  r.p.assign(a.size(), 0);
  for (int i = 0; i < a.size(); ++i) r.p[f(i)] = static_cast<uint8_t>(f(a.p[i]));
  return r;
}

int closure_loops(const Diagram& a) {
  if (a.m != a.n) fail(Err::SignatureMismatch, "trace needs a square diagram");
  const int n = a.n;
  std::vector<uint8_t> seen(2 * n, 0);
  int c = 0;
  for (int s = 0; s < 2 * n; ++s) {
    if (seen[s]) continue;
    ++c;
    int x = s;
    while (!seen[x]) {
      seen[x] = 1;
      int y = a.p[x];
      seen[y] = 1;
      x = y < n ? y + n : y - n;  // closure strand
    }
  }
  return c;
}

namespace {
void gen_matchings(std::vector<int>& pts, std::vector<int>& partner, std::vector<std::vector<int>>& out) {
  if (pts.empty()) {
    out.push_back(partner);
    return;
  }
  int a = pts[0];
  for (size_t i = 1; i < pts.size(); i += 2) {
    std::vector<int> inner(pts.begin() + 1, pts.begin() + i), outer(pts.begin() + i + 1, pts.end());
    partner[a] = pts[i];
    partner[pts[i]] = a;
    // enumerate inner x outer
    std::vector<std::vector<int>> left;
    std::vector<int> tmp = partner;
    gen_matchings(inner, tmp, left);
    for (auto& L : left) {
      std::vector<int> t2 = L;
      gen_matchings(outer, t2, out);
    }
  }
}
}  // namespace

std::vector<Diagram> enumerate_diagrams(int m, int n) {
  std::vector<Diagram> res;
  if (m < 0 || n < 0 || (m + n) % 2) return res;
  int N = m + n;
  std::vector<int> pts(N), partner(N, -1);
  for (int i = 0; i < N; ++i) pts[i] = i;
  std::vector<std::vector<int>> all;
  gen_matchings(pts, partner, all);
  res.reserve(all.size());
  for (const auto& mc : all) {
    Diagram d;
    d.m = m;
    d.n = n;
    d.p.assign(N, 0);
    for (int c = 0; c < N; ++c) d.p[uncirc(m, n, c)] = static_cast<uint8_t>(uncirc(m, n, mc[c]));
    res.push_back(std::move(d));
  }
  return res;
}

unsigned long long catalan(int k) {
  unsigned long long c = 1;
  for (int i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

// ---------------------------------------------------------------- morphisms

namespace {
bool droppable(const Scalar& c) {
  if (c.backend() == Backend::Float) return std::fabs(c.flt()) < 1e-13;
  return c.is_zero();
}

std::vector<Scalar> d_powers(const Ring& r, int k) {
  std::vector<Scalar> v{r.one()};
  Scalar d = r.d();
  for (int i = 1; i <= k; ++i) v.push_back(v.back() * d);
  return v;
}
}  // namespace

Morphism::Morphism(const Ring& r, const Diagram& d) : Morphism(r, d, r.one()) {}

Morphism::Morphism(const Ring& r, const Diagram& d, const Scalar& c) : ring_(r), m_(d.m), n_(d.n) {
  add_term(d, c);
}

Scalar Morphism::coeff(const Diagram& d) const {
  auto it = terms_.find(d);
  return it == terms_.end() ? ring_.zero() : it->second;
}

std::vector<std::pair<Diagram, Scalar>> Morphism::sorted_terms() const {
  std::vector<std::pair<Diagram, Scalar>> v(terms_.begin(), terms_.end());
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return v;
}

void Morphism::add_term(const Diagram& d, const Scalar& c) {
  if (d.m != m_ || d.n != n_) fail(Err::SignatureMismatch, "term signature differs from morphism");
  if (droppable(c)) return;
  auto it = terms_.find(d);
  if (it == terms_.end()) {
    terms_.emplace(d, c);
    return;
  }
  it->second += c;
  if (droppable(it->second)) terms_.erase(it);
}

void Morphism::check_sig(const Morphism& o) const {
  if (m_ != o.m_ || n_ != o.n_) fail(Err::SignatureMismatch, "signatures differ");
}

Morphism Morphism::operator+(const Morphism& o) const {
  check_sig(o);
  Morphism r = *this;
  for (const auto& [d, c] : o.terms_) r.add_term(d, c);
  return r;
}

Morphism Morphism::operator-(const Morphism& o) const { return *this + o * ring_.integer(-1); }

Morphism Morphism::operator*(const Scalar& c) const {
  Morphism r(ring_, m_, n_);
  if (droppable(c)) return r;
  for (const auto& [d, x] : terms_) r.add_term(d, x * c);
  return r;
}

bool Morphism::operator==(const Morphism& o) const {
  if (m_ != o.m_ || n_ != o.n_) return false;
  for (const auto& [d, c] : terms_)
    if (o.coeff(d) != c) return false;
  for (const auto& [d, c] : o.terms_)
    if (coeff(d) != c) return false;
  return true;
}

Morphism Morphism::to_ring(const Ring& r) const {
  if (ring_.backend != Backend::Generic) fail(Err::BackendMismatch, "to_ring expects a generic morphism");
  Morphism out(r, m_, n_);
  for (const auto& [d, c] : terms_) out.add_term(d, r.from_generic(c.gen()));
  return out;
}

std::string Morphism::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, c] : sorted_terms()) {
    os << (first ? "" : " + ") << "[" << c.str() << "]" << d.str();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

namespace {

// Generic compose with common denominators: all numerators become integer
// polynomials, products are accumulated in 128-bit integers when the bound
// allows it, and each output coefficient is normalized once.
struct Scaled {
  ZPoly den;
  std::vector<const Diagram*> diag;
  std::vector<ZPoly> num;
};

ZPoly lcm(const ZPoly& a, const ZPoly& b) { return (a * b).divexact(gcd(a, b)); }

Scaled scale_common(const Morphism& a) {
  Scaled s;
  s.den = ZPoly::constant(1);
  for (const auto& [d, c] : a.terms()) s.den = lcm(s.den, c.gen().den());
  if (sgn(s.den.lead()) < 0) s.den = -s.den;
  for (const auto& [d, c] : a.terms()) {
    s.diag.push_back(&d);
    s.num.push_back(c.gen().num() * s.den.divexact(c.gen().den()));
  }
  return s;
}

using i128 = __int128;

mpz_class from_i128(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  mpz_class hi = static_cast<unsigned long>(static_cast<uint64_t>(u >> 64));
  mpz_class lo = static_cast<unsigned long>(static_cast<uint64_t>(u));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

Morphism compose_generic_fast(const Morphism& a, const Morphism& b) {
  Scaled sa = scale_common(a), sb = scale_common(b);
  // magnitude bound for the 128-bit path
  auto fits = [](const Scaled& s, double& maxabs, int& maxdeg) {
    maxabs = 0;
    maxdeg = 0;
    for (const auto& p : s.num) {
      maxdeg = std::max(maxdeg, p.degree());
      for (const auto& c : p.coeffs()) {
        if (!c.fits_slong_p()) return false;
        maxabs = std::max(maxabs, std::fabs(c.get_d()));
      }
    }
    return true;
  };
  double ma, mb;
  int da, db;
  bool small = fits(sa, ma, da) && fits(sb, mb, db);
  double pairs = static_cast<double>(sa.num.size()) * static_cast<double>(sb.num.size());
  if (small) small = ma * mb * (std::min(da, db) + 1) * pairs < std::ldexp(1.0, 124);

  const Ring& ring = a.ring();
  Morphism out(ring, b.m(), a.n());
  ZPoly den = sa.den * sb.den;
  if (small) {
    std::vector<std::vector<int64_t>> na(sa.num.size()), nb(sb.num.size());
    for (size_t i = 0; i < sa.num.size(); ++i)
      for (const auto& c : sa.num[i].coeffs()) na[i].push_back(c.get_si());
    for (size_t j = 0; j < sb.num.size(); ++j)
      for (const auto& c : sb.num[j].coeffs()) nb[j].push_back(c.get_si());
    std::unordered_map<Diagram, std::vector<i128>, DiagramHash> acc;
    for (size_t i = 0; i < na.size(); ++i) {
      for (size_t j = 0; j < nb.size(); ++j) {
        int r = 0;
        Diagram f = compose(*sa.diag[i], *sb.diag[j], &r);
        auto& v = acc[f];
        size_t need = na[i].size() + nb[j].size() - 1 + r;
        if (v.size() < need) v.resize(need, 0);
        for (size_t x = 0; x < na[i].size(); ++x) {
          i128 ax = na[i][x];
          if (!ax) continue;
          i128* dst = v.data() + x + r;
          for (size_t y = 0; y < nb[j].size(); ++y) dst[y] += ax * nb[j][y];
        }
      }
    }
    for (auto& [f, v] : acc) {
      std::vector<mpz_class> c(v.size());
      for (size_t k = 0; k < v.size(); ++k) c[k] = from_i128(v[k]);
      ZPoly num(std::move(c));
      if (!num.is_zero()) out.add_term(f, Scalar(RatFunc(num, den)));
    }
    return out;
  }
  std::unordered_map<Diagram, ZPoly, DiagramHash> acc;
  for (size_t i = 0; i < sa.num.size(); ++i)
    for (size_t j = 0; j < sb.num.size(); ++j) {
      int r = 0;
      Diagram f = compose(*sa.diag[i], *sb.diag[j], &r);
      auto& v = acc[f];
      v = v + (sa.num[i] * sb.num[j]).shifted(r);
    }
  for (auto& [f, num] : acc)
    if (!num.is_zero()) out.add_term(f, Scalar(RatFunc(num, den)));
  return out;
}

}  // namespace

Morphism compose(const Morphism& a, const Morphism& b) {
  if (b.n() != a.m()) fail(Err::SignatureMismatch, "compose: inner signatures differ");
  if (!(a.ring() == b.ring())) fail(Err::BackendMismatch, "compose: rings differ");
  const Ring& r = a.ring();
  if (r.backend == Backend::Generic && a.size() * b.size() > 16) return compose_generic_fast(a, b);
  Morphism out(r, b.m(), a.n());
  std::vector<Scalar> dp = d_powers(r, (a.m() + 1) / 2 + 1);
  for (const auto& [da, ca] : a.terms())
    for (const auto& [db, cb] : b.terms()) {
      int loops = 0;
      Diagram f = compose(da, db, &loops);
      out.add_term(f, ca * cb * dp[loops]);
    }
  return out;
}

Morphism tensor(const Morphism& a, const Morphism& b) {
  if (!(a.ring() == b.ring())) fail(Err::BackendMismatch, "tensor: rings differ");
  Morphism out(a.ring(), a.m() + b.m(), a.n() + b.n());
  for (const auto& [da, ca] : a.terms())
    for (const auto& [db, cb] : b.terms()) out.add_term(tensor(da, db), ca * cb);
  return out;
}

Morphism bar(const Morphism& a) {
  // coefficients are real in every backend here, conjugation is trivial
  Morphism out(a.ring(), a.n(), a.m());
  for (const auto& [d, c] : a.terms()) out.add_term(bar(d), c);
  return out;
}

Scalar markov_trace(const Morphism& a) {
  if (a.m() != a.n()) fail(Err::SignatureMismatch, "trace needs a square morphism");
  const Ring& r = a.ring();
  std::vector<Scalar> dp = d_powers(r, a.n());
  Scalar t = r.zero();
  for (const auto& [d, c] : a.terms()) t += c * dp[closure_loops(d)];
  return t;
}

// ---------------------------------------------------------------- Jones-Wenzl

namespace {
struct JwCache {
  std::shared_mutex mu;
  std::map<std::string, std::vector<std::unique_ptr<Morphism>>> table;
};
JwCache& jw_cache() {
  static JwCache c;
  return c;
}
}  // namespace

const Morphism& jones_wenzl(const Ring& r, int k) {
  if (k < 1) fail(Err::IndexOutOfRange, "jones_wenzl needs k >= 1");
  JwCache& c = jw_cache();
  const std::string key = r.name();
  {
    std::shared_lock lk(c.mu);
    auto it = c.table.find(key);
    if (it != c.table.end() && static_cast<int>(it->second.size()) >= k) return *it->second[k - 1];
  }
  std::unique_lock lk(c.mu);
  auto& v = c.table[key];
  if (v.empty()) v.push_back(std::make_unique<Morphism>(Morphism::identity(r, 1)));
  while (static_cast<int>(v.size()) < k) {
    int j = static_cast<int>(v.size());  // have p_j, build p_{j+1}
    Scalar qj = r.qint(j), qj1 = r.qint(j + 1);
    if (qj1.is_zero() || (qj1.backend() == Backend::Float && std::fabs(qj1.flt()) < 1e-12))
      fail(Err::PoleAtSpecialValue,
           "p_" + std::to_string(j + 1) + " is not evaluable: [" + std::to_string(j + 1) + "] = 0 at " + r.name());
    Morphism pj1 = tensor(*v.back(), Morphism::identity(r, 1));
    Morphism mid = compose(Morphism::U(r, j + 1, j), pj1);
    Morphism sand = compose(pj1, mid);
    v.push_back(std::make_unique<Morphism>(pj1 - sand * (qj / qj1)));
  }
  return *v[k - 1];
}

// ---------------------------------------------------------------- Gram

SMatrix gram_matrix(const Ring& r, int m, int n) {
  auto basis = enumerate_diagrams(m, n);
  std::vector<Scalar> dp = d_powers(r, std::max(m, n) + 1);
  size_t N = basis.size();
  SMatrix g(N, std::vector<Scalar>(N, r.zero()));
  std::vector<Diagram> bars;
  for (const auto& d : basis) bars.push_back(bar(d));
  for (size_t i = 0; i < N; ++i)
    for (size_t j = i; j < N; ++j) {
      int loops = 0;
      Diagram f = compose(basis[i], bars[j], &loops);
      g[i][j] = g[j][i] = dp[loops + closure_loops(f)];
    }
  return g;
}

std::vector<Scalar> coordinates(const Morphism& a, const std::vector<Diagram>& basis) {
  std::vector<Scalar> v;
  v.reserve(basis.size());
  for (const auto& d : basis) v.push_back(a.coeff(d));
  if (v.size() != basis.size()) fail(Err::Internal, "coordinates");
  return v;
}

Morphism from_coordinates(const Ring& r, int m, int n, const std::vector<Diagram>& basis,
                          const std::vector<Scalar>& c) {
  Morphism out(r, m, n);
  for (size_t i = 0; i < basis.size(); ++i) out.add_term(basis[i], c[i]);
  return out;
}

std::vector<Morphism> radical_basis(int n, int ell) {
  Ring r = Ring::special(ell);
  auto basis = enumerate_diagrams(n, n);
  auto ns = nullspace(r, gram_matrix(r, n, n));
  std::vector<Morphism> out;
  for (const auto& v : ns) out.push_back(from_coordinates(r, n, n, basis, v));
  return out;
}

// ---------------------------------------------------------------- embeddings

namespace {
Morphism repeat(const Ring& r, const Diagram& d, int k) {
  Diagram acc{0, 0, {}};
  for (int i = 0; i < k; ++i) acc = tensor(acc, d);
  return Morphism(r, acc);
}
}  // namespace

Morphism embed_square(const Morphism& a) {
  const Ring& r = a.ring();
  if (a.m() == a.n()) return a;
  if (a.m() > a.n()) return tensor(a, repeat(r, Diagram::cap(), (a.m() - a.n()) / 2));
  return tensor(a, repeat(r, Diagram::cup(), (a.n() - a.m()) / 2));
}

Morphism unembed_square(const Morphism& x, int m, int n) {
  const Ring& r = x.ring();
  if (m == n) return x;
  int k = std::abs(m - n) / 2;
  Scalar f = pow(r.d(), -k, r);
  if (m > n) {
    Morphism proj = tensor(Morphism::identity(r, n), repeat(r, Diagram::cup(), k));
    return compose(proj, x) * f;
  }
  Morphism inj = tensor(Morphism::identity(r, m), repeat(r, Diagram::cap(), k));
  return compose(x, inj) * f;
}

}  // namespace tlg
