// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 tlg authors
#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tlg/scalar.hpp"

namespace tlg {

// Boundary points 0..m-1 on top (left to right), then m..m+n-1 on the bottom
// (left to right). p[i] is the partner of point i.
struct Diagram {
  int m = 0, n = 0;
  std::vector<uint8_t> p;

  int size() const { return m + n; }
  bool operator==(const Diagram& o) const { return m == o.m && n == o.n && p == o.p; }
  bool operator<(const Diagram& o) const {
    if (m != o.m) return m < o.m;
    if (n != o.n) return n < o.n;
    return p < o.p;
  }
  int through_strands() const;
  bool valid() const;  // involution, no fixed point, noncrossing
  std::string str() const;

  static Diagram identity(int n);
  static Diagram U(int n, int i);  // 1-based, joins strands i-1 and i (0-based)
  static Diagram cup();            // Hom(2,0)
  static Diagram cap();            // Hom(0,2)
  static Diagram from_pairing(int m, int n, std::vector<uint8_t> p);  // validates
};

struct DiagramHash {
  size_t operator()(const Diagram& d) const noexcept {
    uint64_t h = 1469598103934665603ULL ^ (static_cast<uint64_t>(d.m) << 8 | d.n);
    for (uint8_t x : d.p) h = (h ^ x) * 1099511628211ULL;
    return static_cast<size_t>(h);
  }
};

// a: Hom(m,n) below, b: Hom(l,m) stacked on top; result Hom(l,n)
Diagram compose(const Diagram& a, const Diagram& b, int* loops);
Diagram tensor(const Diagram& a, const Diagram& b);
Diagram bar(const Diagram& a);
int closure_loops(const Diagram& a);  // Markov closure, square only

std::vector<Diagram> enumerate_diagrams(int m, int n);
unsigned long long catalan(int k);

class Morphism {
 public:
  using Terms = std::unordered_map<Diagram, Scalar, DiagramHash>;

  Morphism(const Ring& r, int m, int n) : ring_(r), m_(m), n_(n) {}
  Morphism(const Ring& r, const Diagram& d);
  Morphism(const Ring& r, const Diagram& d, const Scalar& c);

  static Morphism identity(const Ring& r, int n) { return Morphism(r, Diagram::identity(n)); }
  static Morphism U(const Ring& r, int n, int i) { return Morphism(r, Diagram::U(n, i)); }

  const Ring& ring() const { return ring_; }
  int m() const { return m_; }
  int n() const { return n_; }
  const Terms& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Scalar coeff(const Diagram& d) const;
  std::vector<std::pair<Diagram, Scalar>> sorted_terms() const;

  void add_term(const Diagram& d, const Scalar& c);
  Morphism operator+(const Morphism& o) const;
  Morphism operator-(const Morphism& o) const;
  Morphism operator*(const Scalar& c) const;
  bool operator==(const Morphism& o) const;
  bool operator!=(const Morphism& o) const { return !(*this == o); }

  Morphism to_ring(const Ring& r) const;  // generic -> special/float
  std::string str() const;

 private:
  void check_sig(const Morphism& o) const;
  Ring ring_;
  int m_, n_;
  Terms terms_;
};

Morphism compose(const Morphism& a, const Morphism& b);
Morphism tensor(const Morphism& a, const Morphism& b);
Morphism bar(const Morphism& a);
Scalar markov_trace(const Morphism& a);

// p_k, memoized per ring
const Morphism& jones_wenzl(const Ring& r, int k);

using SMatrix = std::vector<std::vector<Scalar>>;
SMatrix gram_matrix(const Ring& r, int m, int n);

// null space of the Gram form on Hom(n,n) at d = 2cos(pi/(ell+2)), exact
std::vector<Morphism> radical_basis(int n, int ell);

// rectangular Hom(m,n) into the square algebra and back
Morphism embed_square(const Morphism& a);
Morphism unembed_square(const Morphism& x, int m, int n);

// coordinate vector of a morphism over enumerate_diagrams(m,n)
std::vector<Scalar> coordinates(const Morphism& a, const std::vector<Diagram>& basis);
Morphism from_coordinates(const Ring& r, int m, int n, const std::vector<Diagram>& basis,
                          const std::vector<Scalar>& c);

}  // namespace tlg
