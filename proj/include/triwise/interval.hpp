#pragma once

// Rational-endpoint intervals with outward rounding. Only square roots
// introduce rounding; every other operation is exact, so an Interval result
// always contains the true real value of the evaluated expression.

#include <algorithm>
#include <stdexcept>
#include <string>

#include "triwise/rational.hpp"

namespace triwise {

struct UndefinedExprError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Interval {
  Rat lo, hi;

  Interval() : lo(0), hi(0) {}
  Interval(Rat point) : lo(point), hi(point) {}
  Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
  }

  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0 && 0 <= hi; }
  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool is_point() const { return lo == hi; }
};

inline Interval operator+(const Interval& a, const Interval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

inline Interval operator-(const Interval& a, const Interval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

inline Interval operator*(const Interval& a, const Interval& b) {
  Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {std::min(std::min(p1, p2), std::min(p3, p4)),
          std::max(std::max(p1, p2), std::max(p3, p4))};
}

inline Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero())
    throw UndefinedExprError("interval division by interval containing 0");
  return a * Interval(Rat(1) / b.hi, Rat(1) / b.lo);
}

// x^k with the usual sign analysis for even powers.
inline Interval pow_interval(const Interval& a, long k) {
  if (k == 0) return Interval(Rat(1));
  if (k < 0) return Interval(Rat(1)) / pow_interval(a, -k);
  Rat plo = pow_rat(a.lo, k), phi = pow_rat(a.hi, k);
  if (k % 2 == 1) return {plo, phi};
  if (a.lo >= 0) return {plo, phi};
  if (a.hi <= 0) return {phi, plo};
  return {Rat(0), std::max(plo, phi)};
}

// Encloses sqrt(x) for x >= 0 in an interval of width <= 1/2^bits.
// lo^2 <= x <= hi^2 exactly; hi - lo = 1/(den * 2^bits).
inline Interval sqrt_enclosure(const Rat& x, unsigned bits = 128) {
  if (x < 0) throw UndefinedExprError("sqrt of negative rational");
  if (x == 0) return Interval(Rat(0));
  const Int& num = x.get_num();
  const Int& den = x.get_den();
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
  // sqrt(num/den) = sqrt(num*den)/den; work at integer precision den*scale.
  Int t = num * den * scale * scale;
  Int s;
  mpz_sqrt(s.get_mpz_t(), t.get_mpz_t());
  Int d = den * scale;
  Rat lo = rat(s, d);
  if (s * s == t) return Interval(lo);
  return {lo, rat(s + 1, d)};
}

inline Interval sqrt_interval(const Interval& a, unsigned bits = 128) {
  if (a.lo < 0) throw UndefinedExprError("sqrt of interval dipping below 0");
  return {sqrt_enclosure(a.lo, bits).lo, sqrt_enclosure(a.hi, bits).hi};
}

inline std::string to_string(const Interval& a) {
  return "[" + rat_str(a.lo) + ", " + rat_str(a.hi) + "]";
}

}  // namespace triwise
