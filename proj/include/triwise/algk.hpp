#pragma once

// Exact arithmetic in a real quadratic or biquadratic extension
// Q(sqrt(u), sqrt(v)) with square-free integer radicands u, v > 1.
// Numbers are stored on the basis {1, sqrt(u), sqrt(v), sqrt(u*v)}, so
// equality with 0 is a component test and signs of non-zero values are
// decided by refining interval enclosures of the radicals.

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "triwise/interval.hpp"
#include "triwise/poly.hpp"
#include "triwise/rational.hpp"

namespace triwise {

// Radicand slots; value 0 marks an unused slot.
struct KContext {
  Int u = 0, v = 0;

  bool has(const Int& r) const { return r == u || r == v || (u != 0 && v != 0 && r == u * v); }

  // Registers a square-free radicand, filling a free slot if needed.
  // Returns false when both slots are taken by other radicands and r is not
  // their product.
  bool admit(const Int& r) {
    if (r <= 1) throw std::logic_error("KContext: radicand must exceed 1");
    if (has(r)) return true;
    if (u == 0) { u = r; return true; }
    if (v == 0) { v = r; return true; }
    return false;
  }
};

struct AlgK {
  // a + b*sqrt(u) + c*sqrt(v) + d*sqrt(u*v)
  Rat a, b, c, d;

  AlgK() : a(0), b(0), c(0), d(0) {}
  explicit AlgK(Rat rational) : a(std::move(rational)), b(0), c(0), d(0) {}
  AlgK(Rat a_, Rat b_, Rat c_, Rat d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
  bool is_rational() const { return b == 0 && c == 0 && d == 0; }

  friend AlgK operator+(const AlgK& x, const AlgK& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend AlgK operator-(const AlgK& x, const AlgK& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  friend AlgK operator-(const AlgK& x) { return {-x.a, -x.b, -x.c, -x.d}; }
  friend bool operator==(const AlgK& x, const AlgK& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

inline AlgK mul(const KContext& ctx, const AlgK& x, const AlgK& y) {
  Rat u(ctx.u), v(ctx.v);
  // (a1 + b1√u + c1√v + d1√uv)(a2 + b2√u + c2√v + d2√uv)
  return {x.a * y.a + u * x.b * y.b + v * x.c * y.c + u * v * x.d * y.d,
          x.a * y.b + x.b * y.a + v * (x.c * y.d + x.d * y.c),
          x.a * y.c + x.c * y.a + u * (x.b * y.d + x.d * y.b),
          x.a * y.d + x.d * y.a + x.b * y.c + x.c * y.b};
}

inline AlgK scale(const AlgK& x, const Rat& s) {
  return {x.a * s, x.b * s, x.c * s, x.d * s};
}

inline Interval enclose(const KContext& ctx, const AlgK& x, unsigned bits = 128) {
  Interval acc(x.a);
  if (x.b != 0) acc = acc + Interval(x.b) * sqrt_enclosure(Rat(ctx.u), bits);
  if (x.c != 0) acc = acc + Interval(x.c) * sqrt_enclosure(Rat(ctx.v), bits);
  if (x.d != 0) acc = acc + Interval(x.d) * sqrt_enclosure(Rat(ctx.u * ctx.v), bits);
  return acc;
}

// Exact sign of x: -1, 0, +1. Zero is a component test; otherwise the
// enclosure is refined until it excludes zero.
inline int sign(const KContext& ctx, const AlgK& x) {
  if (x.is_zero()) return 0;
  if (x.is_rational()) return x.a > 0 ? 1 : -1;
  for (unsigned bits = 64; bits <= 1u << 14; bits *= 2) {
    Interval iv = enclose(ctx, x, bits);
    if (iv.lo > 0) return 1;
    if (iv.hi < 0) return -1;
  }
  throw std::logic_error("AlgK sign: refinement exhausted (near-degenerate value)");
}

// Polynomials in p with AlgK coefficients.
class KPoly {
 public:
  KPoly() = default;
  explicit KPoly(AlgK c0) { coeffs_.push_back(std::move(c0)); trim(); }
  explicit KPoly(std::vector<AlgK> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static KPoly from_poly(const Poly& p) {
    std::vector<AlgK> v;
    v.reserve(p.coeffs().size());
    for (const Rat& c : p.coeffs()) v.push_back(AlgK(c));
    return KPoly(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<AlgK>& coeffs() const { return coeffs_; }

  bool is_rational() const {
    for (const AlgK& c : coeffs_)
      if (!c.is_rational()) return false;
    return true;
  }
  Poly to_poly() const {
    std::vector<Rat> v;
    v.reserve(coeffs_.size());
    for (const AlgK& c : coeffs_) v.push_back(c.a);
    return Poly(std::move(v));
  }

  AlgK eval(const Rat& x) const {
    AlgK acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = AlgK{acc.a * x, acc.b * x, acc.c * x, acc.d * x} + *it;
    }
    return acc;
  }

  Interval eval_interval(const KContext& ctx, const Interval& x, unsigned bits = 128) const {
    Interval acc{Rat(0), Rat(0)};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * x + enclose(ctx, *it, bits);
    return acc;
  }

  friend KPoly add(const KPoly& a, const KPoly& b) {
    std::vector<AlgK> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) v[i] = v[i] + a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) v[i] = v[i] + b.coeffs_[i];
    return KPoly(std::move(v));
  }
  friend KPoly sub(const KPoly& a, const KPoly& b) {
    std::vector<AlgK> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) v[i] = v[i] + a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) v[i] = v[i] - b.coeffs_[i];
    return KPoly(std::move(v));
  }
  friend KPoly mul(const KContext& ctx, const KPoly& a, const KPoly& b) {
    if (a.is_zero() || b.is_zero()) return KPoly();
    std::vector<AlgK> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
      for (size_t j = 0; j < b.coeffs_.size(); ++j)
        v[i + j] = v[i + j] + mul(ctx, a.coeffs_[i], b.coeffs_[j]);
    return KPoly(std::move(v));
  }
  friend KPoly scale(const KPoly& a, const Rat& s) {
    std::vector<AlgK> v = a.coeffs_;
    for (AlgK& c : v) c = scale(c, s);
    return KPoly(std::move(v));
  }
  KPoly negate() const {
    std::vector<AlgK> v = coeffs_;
    for (AlgK& c : v) c = -c;
    return KPoly(std::move(v));
  }

  // Synthetic division by (p - root); the root must be exact.
  KPoly deflate(const Rat& root) const {
    if (is_zero()) throw std::domain_error("KPoly::deflate of zero polynomial");
    std::vector<AlgK> q(coeffs_.size() - 1);
    AlgK carry;
    for (size_t i = coeffs_.size(); i-- > 1;) {
      carry = coeffs_[i] + AlgK{carry.a * root, carry.b * root, carry.c * root, carry.d * root};
      q[i - 1] = carry;
    }
    AlgK rem = coeffs_[0] + AlgK{carry.a * root, carry.b * root, carry.c * root, carry.d * root};
    if (!rem.is_zero()) throw std::logic_error("KPoly::deflate: not a root");
    return KPoly(std::move(q));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }
  std::vector<AlgK> coeffs_;
};

// Largest-square-free factorization n = s^2 * f by trial division.
// Radicands in this library are tiny (5, 33, 165), so this never works hard.
inline std::pair<Int, Int> squarefree_split(Int n) {
  if (n <= 0) throw std::domain_error("squarefree_split: need positive n");
  Int square_part(1), free_part(1);
  for (Int d(2); d * d <= n; ++d) {
    if (n % d != 0) continue;
    int count = 0;
    while (n % d == 0) { n /= d; ++count; }
    for (int i = 0; i < count / 2; ++i) square_part *= d;
    if (count % 2 == 1) free_part *= d;
  }
  free_part *= n;
  return {square_part, free_part};
}

}  // namespace triwise
