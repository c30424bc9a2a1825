#pragma once

// Exact arbitrary-precision rational arithmetic, backed by GMP.
// All probabilities, measures and LP data in this library are Rat values;
// no binary floating point appears on any certified path.

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace triwise {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat(const Int& num, const Int& den) {
  if (den == 0) throw std::domain_error("rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "a/b", a decimal literal ("0.453264" = 453264/1000000), or an
// integer. Decimal input is converted exactly, never through a double.
// Base is pinned to 10 (the default mpz string constructor auto-detects
// octal/hex, which would corrupt digit strings with leading zeros).
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rat: empty string");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int num(s.substr(0, slash), 10), den(s.substr(slash + 1), 10);
    return rat(num, den);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw std::invalid_argument("parse_rat: bad literal '" + s + "'");
    Int num(digits, 10), den(1);
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    return rat(num, den);
  }
  return rat(Int(s, 10), Int(1));
}

// x^k for integer k (negative allowed, x != 0 then).
inline Rat pow_rat(const Rat& x, long k) {
  if (k == 0) return Rat(1);
  bool neg = k < 0;
  unsigned long e = neg ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  Rat r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), e);
  r.canonicalize();
  if (neg) {
    if (r == 0) throw std::domain_error("pow_rat: 0 to negative power");
    return Rat(1) / r;
  }
  return r;
}

// Binomial coefficient with the combinatorial convention C(n,k) = 0 for
// k < 0 or k > n. n must be non-negative.
inline Int binom(const Int& n, long k) {
  if (n < 0) throw std::domain_error("binom: negative n");
  if (k < 0 || Int(k) > n) return Int(0);
  Int r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

inline Int binom(long n, long k) { return binom(Int(n), k); }

inline Int floor_rat(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline std::string rat_str(const Rat& x) { return x.get_str(); }

}  // namespace triwise
