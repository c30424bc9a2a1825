#pragma once

// Univariate polynomials over the rationals: ring arithmetic, Sturm
// sequences, root isolation, and an exact "non-negative on [a,b]" decision.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "triwise/interval.hpp"
#include "triwise/rational.hpp"

namespace triwise {

class Poly {
 public:
  Poly() = default;
  explicit Poly(Rat c0) { coeffs_.push_back(std::move(c0)); trim(); }
  explicit Poly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Poly zero() { return Poly(); }
  static Poly constant(Rat c) { return Poly(std::move(c)); }
  // The monomial c * x^k.
  static Poly monomial(Rat c, size_t k) {
    std::vector<Rat> v(k + 1, Rat(0));
    v[k] = std::move(c);
    return Poly(std::move(v));
  }
  static Poly x() { return monomial(Rat(1), 1); }

  bool is_zero() const { return coeffs_.empty(); }
  // Degree of the zero polynomial is -1 by convention.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  Rat coeff(size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rat(0); }
  Rat leading() const { return is_zero() ? Rat(0) : coeffs_.back(); }

  Rat eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Interval eval_interval(const Interval& x) const {
    Interval acc{Rat(0), Rat(0)};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * x + Interval(*it);
    return acc;
  }

  Poly derivative() const {
    if (coeffs_.size() <= 1) return Poly();
    std::vector<Rat> d(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * Rat(static_cast<long>(k));
    return Poly(std::move(d));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rat> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rat(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rat> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rat(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) v[i] -= b.coeffs_[i];
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& a) { return Poly() - a; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rat> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
      for (size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Poly(std::move(v));
  }
  friend Poly operator*(const Poly& a, const Rat& s) {
    std::vector<Rat> v = a.coeffs_;
    for (auto& c : v) c *= s;
    return Poly(std::move(v));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  // Euclidean division: *this = q*div + r with deg r < deg div.
  std::pair<Poly, Poly> divmod(const Poly& div) const {
    if (div.is_zero()) throw std::domain_error("Poly::divmod by zero");
    Poly r = *this;
    std::vector<Rat> q(std::max<long>(degree() - div.degree() + 1, 0), Rat(0));
    while (!r.is_zero() && r.degree() >= div.degree()) {
      long shift = r.degree() - div.degree();
      Rat factor = r.leading() / div.leading();
      q[shift] = factor;
      r = r - Poly::monomial(factor, shift) * div;
    }
    return {Poly(std::move(q)), r};
  }

  Poly compose(const Poly& inner) const {
    Poly acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * inner + Poly::constant(*it);
    return acc;
  }

  // Divides out a known rational root (synthetic division); the remainder
  // must vanish.
  Poly deflate(const Rat& root) const {
    if (is_zero()) throw std::domain_error("Poly::deflate of zero polynomial");
    std::vector<Rat> q(coeffs_.size() - 1, Rat(0));
    Rat carry(0);
    for (size_t i = coeffs_.size(); i-- > 1;) {
      carry = coeffs_[i] + carry * root;
      q[i - 1] = carry;
    }
    if (coeffs_[0] + carry * root != 0)
      throw std::logic_error("Poly::deflate: not a root");
    return Poly(std::move(q));
  }

  std::string str(const std::string& var = "p") const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t k = coeffs_.size(); k-- > 0;) {
      if (coeffs_[k] == 0) continue;
      if (!out.empty()) out += " + ";
      out += rat_str(coeffs_[k]);
      if (k >= 1) out += "*" + var;
      if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Rat> coeffs_;  // coeffs_[k] multiplies x^k
};

inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) a = a * (Rat(1) / a.leading());
  return a;
}

inline Poly squarefree_part(const Poly& f) {
  if (f.is_zero() || f.degree() == 0) return f;
  Poly g = gcd(f, f.derivative());
  return f.divmod(g).first;
}

// Sturm chain: f, f', then negated remainders.
inline std::vector<Poly> sturm_chain(const Poly& f) {
  std::vector<Poly> chain{f, f.derivative()};
  while (!chain.back().is_zero()) {
    const Poly& a = chain[chain.size() - 2];
    const Poly& b = chain.back();
    Poly r = a.divmod(b).second;
    chain.push_back(-r);
  }
  chain.pop_back();
  return chain;
}

namespace detail {
inline int sturm_variations(const std::vector<Poly>& chain, const Rat& x) {
  int vars = 0, prev = 0;
  for (const Poly& p : chain) {
    Rat v = p.eval(x);
    int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s != 0) {
      if (prev != 0 && s != prev) ++vars;
      prev = s;
    }
  }
  return vars;
}
}  // namespace detail

// Number of distinct real roots of f in the half-open interval (lo, hi].
inline long sturm_count_roots(const Poly& f, const Interval& iv) {
  if (f.is_zero()) throw std::domain_error("sturm_count_roots: zero polynomial");
  auto chain = sturm_chain(squarefree_part(f));
  return detail::sturm_variations(chain, iv.lo) - detail::sturm_variations(chain, iv.hi);
}

namespace detail {

inline long roots_in_open(const std::vector<Poly>& chain, const Poly& f,
                          const Rat& a, const Rat& b) {
  long c = sturm_variations(chain, a) - sturm_variations(chain, b);
  if (f.eval(b) == 0) --c;
  return c;
}

// A point in (lo, hi) that is not a root of f. Each candidate lo+(hi-lo)/d
// can coincide with at most one root, so at most deg(f) misses occur.
inline Rat nonroot_point(const Poly& f, const Rat& lo, const Rat& hi) {
  for (long d = 2;; ++d) {
    Rat m = lo + (hi - lo) / Rat(d);
    if (f.eval(m) != 0) return m;
  }
}

// Breakpoints a = t0 < ... < tm = b such that each open gap holds at most
// one root of f, and a gap adjacent to an endpoint that is itself a root of
// f holds none. Interior breakpoints are never roots.
inline void sign_breakpoints(const std::vector<Poly>& chain, const Poly& f,
                             const Rat& a, const Rat& b, bool root_at_a,
                             bool root_at_b, std::vector<Rat>& out) {
  long allowed = (root_at_a || root_at_b) ? 0 : 1;
  if (roots_in_open(chain, f, a, b) <= allowed) {
    out.push_back(b);
    return;
  }
  Rat m = nonroot_point(f, a, b);
  sign_breakpoints(chain, f, a, m, root_at_a, false, out);
  sign_breakpoints(chain, f, m, b, false, root_at_b, out);
}

}  // namespace detail

// Sample points sufficient to decide the sign pattern of any function whose
// zero set is contained in the zero set of `locator` on [a, b]: endpoint a,
// endpoint b, breakpoints, and a non-root interior sample per gap.
inline std::vector<Rat> sign_samples(const Poly& locator, const Rat& a, const Rat& b) {
  if (a > b) throw std::invalid_argument("sign_samples: empty interval");
  if (a == b) return {a};
  if (locator.is_zero())
    return {a, detail::nonroot_point(Poly::constant(Rat(1)), a, b), b};
  Poly f = squarefree_part(locator);
  auto chain = sturm_chain(f);
  std::vector<Rat> breakpoints{a};
  detail::sign_breakpoints(chain, f, a, b, f.eval(a) == 0, f.eval(b) == 0, breakpoints);
  std::vector<Rat> samples;
  for (size_t i = 0; i < breakpoints.size(); ++i) {
    samples.push_back(breakpoints[i]);
    if (i + 1 < breakpoints.size())
      samples.push_back(detail::nonroot_point(f, breakpoints[i], breakpoints[i + 1]));
  }
  return samples;
}

struct PolyNonnegResult {
  bool nonneg;
  std::optional<Rat> witness;  // point with f(witness) < 0 when !nonneg
};

// Exact decision of f >= 0 on the closed interval [a, b].
inline PolyNonnegResult poly_nonneg_on(const Poly& f, const Interval& iv) {
  if (f.is_zero()) return {true, std::nullopt};
  for (const Rat& x : sign_samples(f, iv.lo, iv.hi))
    if (f.eval(x) < 0) return {false, x};
  return {true, std::nullopt};
}

}  // namespace triwise
