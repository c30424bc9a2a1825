#pragma once

// The named families: BD_r(n), the Frankl families A(n,t,i), the three
// limit constructions F1/F2/F3, F_r(n,s), and the uniform counting formulas
// for BD_r(n,k) and F_r(n,k,s). Explicit materialization is capped at
// n <= 22; the counting path takes arbitrary n through big integers.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "triwise/rational.hpp"
#include "triwise/setfam.hpp"

namespace triwise {

struct ConstructionId {
  enum class Kind { BD, AK, F1, F2, F3, FRS, BD_UNIF, FRS_UNIF };
  Kind kind;
  long r = 0, n = 0, t = 0, i = 0, s = 0, k = 0;

  static ConstructionId bd(long r, long n) { return {Kind::BD, r, n, 0, 0, 0, 0}; }
  static ConstructionId ak(long n, long t, long i) { return {Kind::AK, 0, n, t, i, 0, 0}; }
  static ConstructionId f1(long n) { return {Kind::F1, 0, n, 0, 0, 0, 0}; }
  static ConstructionId f2(long n) { return {Kind::F2, 0, n, 0, 0, 0, 0}; }
  static ConstructionId f3(long n) { return {Kind::F3, 0, n, 0, 0, 0, 0}; }
  static ConstructionId frs(long r, long n, long s) { return {Kind::FRS, r, n, 0, 0, s, 0}; }
  static ConstructionId bd_unif(long r, long n, long k) {
    return {Kind::BD_UNIF, r, n, 0, 0, 0, k};
  }
  static ConstructionId frs_unif(long r, long n, long k, long s) {
    return {Kind::FRS_UNIF, r, n, 0, 0, s, k};
  }

  std::string str() const {
    auto args = [](std::initializer_list<long> xs) {
      std::string out = "(";
      bool first = true;
      for (long x : xs) {
        if (!first) out += ",";
        out += std::to_string(x);
        first = false;
      }
      return out + ")";
    };
    switch (kind) {
      case Kind::BD: return "BD" + args({r, n});
      case Kind::AK: return "AK" + args({n, t, i});
      case Kind::F1: return "F1" + args({n});
      case Kind::F2: return "F2" + args({n});
      case Kind::F3: return "F3" + args({n});
      case Kind::FRS: return "FRS" + args({r, n, s});
      case Kind::BD_UNIF: return "BD_UNIF" + args({r, n, k});
      case Kind::FRS_UNIF: return "FRS_UNIF" + args({r, n, k, s});
    }
    return "?";
  }
};

// Parses e.g. "BD(3,5)", "AK(4,2,1)", "F3(6)", "FRS(3,8,1)",
// "BD_UNIF(3,120,70)", "FRS_UNIF(3,120,70,1)".
inline ConstructionId parse_construction(const std::string& text) {
  auto open = text.find('(');
  auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw std::invalid_argument("parse_construction: expected NAME(args)");
  std::string name = text.substr(0, open);
  std::vector<long> args;
  std::string arg;
  for (size_t pos = open + 1; pos <= close; ++pos) {
    char ch = text[pos];
    if (ch == ',' || pos == close) {
      if (arg.empty()) throw std::invalid_argument("parse_construction: empty argument");
      args.push_back(std::stol(arg));
      arg.clear();
    } else if (!isspace(static_cast<unsigned char>(ch))) {
      arg += ch;
    }
  }
  auto need = [&](size_t count) {
    if (args.size() != count)
      throw std::invalid_argument("parse_construction: " + name + " takes " +
                                  std::to_string(count) + " arguments");
  };
  if (name == "BD") { need(2); return ConstructionId::bd(args[0], args[1]); }
  if (name == "AK") { need(3); return ConstructionId::ak(args[0], args[1], args[2]); }
  if (name == "F1") { need(1); return ConstructionId::f1(args[0]); }
  if (name == "F2") { need(1); return ConstructionId::f2(args[0]); }
  if (name == "F3") { need(1); return ConstructionId::f3(args[0]); }
  if (name == "FRS") { need(3); return ConstructionId::frs(args[0], args[1], args[2]); }
  if (name == "BD_UNIF") { need(3); return ConstructionId::bd_unif(args[0], args[1], args[2]); }
  if (name == "FRS_UNIF") {
    need(4);
    return ConstructionId::frs_unif(args[0], args[1], args[2], args[3]);
  }
  throw std::invalid_argument("parse_construction: unknown construction '" + name + "'");
}

namespace construct_detail {

inline SetFamily from_predicate(int n, const std::function<bool(Mask)>& pred) {
  std::vector<Mask> members;
  Mask limit = full_mask(n);
  for (Mask m = 0; m <= limit; ++m)
    if (pred(m)) members.push_back(m);
  return SetFamily(n, std::move(members));
}

}  // namespace construct_detail

// Materializes the family. Guarded at n <= 22.
inline SetFamily build(const ConstructionId& id) {
  using Kind = ConstructionId::Kind;
  if (id.n > 22) throw std::domain_error("build: n > 22 (materialization guard)");
  if (id.n < 1) throw std::domain_error("build: need n >= 1");
  int n = static_cast<int>(id.n);
  switch (id.kind) {
    case Kind::BD: {
      if (id.r < 2 || id.n < id.r + 1) throw std::domain_error("build BD: need n >= r+1, r >= 2");
      Mask head = full_mask(static_cast<int>(id.r + 1));
      return construct_detail::from_predicate(
          n, [&](Mask m) { return popcount(m & head) >= id.r; });
    }
    case Kind::AK: {
      if (id.t < 1 || id.i < 0 || id.t + 2 * id.i > id.n)
        throw std::domain_error("build AK: need t >= 1, i >= 0, t+2i <= n");
      Mask head = full_mask(static_cast<int>(id.t + 2 * id.i));
      return construct_detail::from_predicate(
          n, [&](Mask m) { return popcount(m & head) >= id.t + id.i; });
    }
    case Kind::F1: {
      if (id.n < 3) throw std::domain_error("build F1: need n >= 3");
      Mask pair12 = 0b11;
      Mask rest = full_mask(n) ^ 0b11;  // [3,n]
      Mask all = full_mask(n);
      std::vector<Mask> members;
      for (Mask m = 0; m <= all; ++m)
        if ((m & pair12) == pair12 && (m & rest) != 0) members.push_back(m);
      members.push_back(all & ~Mask{1});       // [n] \ {1}
      members.push_back(all & ~(Mask{1} << 1));  // [n] \ {2}
      return SetFamily(n, std::move(members));
    }
    case Kind::F2: {
      if (id.n < 2) throw std::domain_error("build F2: need n >= 2");
      Mask all = full_mask(n);
      Mask rest = all ^ Mask{1};  // [2,n]
      std::vector<Mask> members;
      for (Mask m = 0; m <= all; ++m)
        if ((m & 1) && Rat(2 * popcount(m & rest)) >= Rat(id.n)) members.push_back(m);
      members.push_back(rest);
      return SetFamily(n, std::move(members));
    }
    case Kind::F3:
      return construct_detail::from_predicate(
          n, [&](Mask m) { return 3 * popcount(m) > 2 * id.n; });
    case Kind::FRS: {
      if (id.r < 2 || id.s < 0 || id.s > id.r - 1)
        throw std::domain_error("build FRS: need r >= 2, 0 <= s <= r-1");
      if (id.n < id.s + 1) throw std::domain_error("build FRS: need n > s");
      Mask all = full_mask(n);
      Mask head = full_mask(static_cast<int>(id.s));  // [s]; 0 when s = 0
      // |G| > (r-s-1)/(r-s) * n, exact rational comparison
      Rat threshold = rat(id.r - id.s - 1, id.r - id.s) * Rat(id.n);
      std::vector<Mask> members;
      for (Mask m = 0; m <= all; ++m) {
        if ((m & head) != head) continue;
        if (Rat(popcount(m & ~head)) > threshold) members.push_back(m);
      }
      for (long i = 1; i <= id.s; ++i) members.push_back(all & ~(Mask{1} << (i - 1)));
      return SetFamily(n, std::move(members));
    }
    case Kind::BD_UNIF: case Kind::FRS_UNIF: {
      throw std::domain_error("build: uniform ids are counted, not materialized");
    }
  }
  throw std::logic_error("build: bad kind");
}

// Explicit k-uniform slices at small n, for cross-checking uniform_count.
inline long uniform_slice_count(const ConstructionId& id, long k) {
  SetFamily f = build(id);
  long count = 0;
  for (Mask m : f.members())
    if (popcount(m) == k) ++count;
  return count;
}

// The k-uniform family F_r(n,k,s) materialized from its definition:
// A = { A in [n]^(k) : [s] subset A, |A cap [s+1,k+1]| >= j0 } together with
// B = { [k+1] \ {i} : 1 <= i <= s }, j0 = floor((r-s-1)/(r-s)(k+1-s)) + 1.
inline SetFamily build_frs_uniform(long r, long n, long k, long s) {
  if (n > 22) throw std::domain_error("build_frs_uniform: n > 22 (materialization guard)");
  if (r < 2 || s < 0 || s > r - 1 || k < s || k > n || k + 1 > n)
    throw std::domain_error("build_frs_uniform: bad parameters");
  Rat frac = rat(r - s - 1, r - s) * Rat(k + 1 - s);
  long j0 = floor_rat(frac).get_si() + 1;
  Mask head = full_mask(static_cast<int>(s));
  Mask mid = full_mask(static_cast<int>(k + 1)) & ~head;  // [s+1, k+1]
  std::vector<Mask> members;
  Mask limit = full_mask(static_cast<int>(n));
  for (Mask m = 0; m <= limit; ++m) {
    if (popcount(m) != k) continue;
    if ((m & head) != head) continue;
    if (popcount(m & mid) >= j0) members.push_back(m);
  }
  Mask k1 = full_mask(static_cast<int>(k + 1));
  for (long i = 1; i <= s; ++i) members.push_back(k1 & ~(Mask{1} << (i - 1)));
  return SetFamily(static_cast<int>(n), std::move(members));
}

// Closed-form measures.
inline Rat measure_formula(const ConstructionId& id, const Rat& p) {
  using Kind = ConstructionId::Kind;
  if (p <= 0 || p >= 1) throw std::domain_error("measure_formula: p outside (0,1)");
  Rat q = 1 - p;
  switch (id.kind) {
    case Kind::BD:
      // (r+1) p^r q + p^{r+1}
      return Rat(id.r + 1) * pow_rat(p, id.r) * q + pow_rat(p, id.r + 1);
    case Kind::AK: {
      // sum_{j=t+i}^{t+2i} C(t+2i, j) p^j q^{t+2i-j}
      long m = id.t + 2 * id.i;
      Rat total(0);
      for (long j = id.t + id.i; j <= m; ++j)
        total += Rat(binom(m, j)) * pow_rat(p, j) * pow_rat(q, m - j);
      return total;
    }
    case Kind::F1:
      // p^2 (1 - q^{n-2}) + 2 p^{n-1} q
      return p * p * (1 - pow_rat(q, id.n - 2)) + Rat(2) * pow_rat(p, id.n - 1) * q;
    case Kind::F2: {
      // p * sum_{k >= n/2} C(n-1,k) p^k q^{n-1-k} + q p^{n-1}
      Rat total(0);
      for (long k = 0; k <= id.n - 1; ++k)
        if (Rat(2 * k) >= Rat(id.n))
          total += Rat(binom(id.n - 1, k)) * pow_rat(p, k) * pow_rat(q, id.n - 1 - k);
      return p * total + q * pow_rat(p, id.n - 1);
    }
    case Kind::F3: {
      // sum_{3i > 2n} C(n,i) p^i q^{n-i}
      Rat total(0);
      for (long i = 0; i <= id.n; ++i)
        if (3 * i > 2 * id.n)
          total += Rat(binom(id.n, i)) * pow_rat(p, i) * pow_rat(q, id.n - i);
      return total;
    }
    default:
      throw std::domain_error("measure_formula: no closed form for " + id.str());
  }
}

// Exact sizes of the k-uniform families; big-integer arithmetic, any n.
inline Int uniform_count(const ConstructionId& id) {
  using Kind = ConstructionId::Kind;
  switch (id.kind) {
    case Kind::BD_UNIF: {
      // |BD_r(n,k)| = (r+1) C(n-r-1, k-r) + C(n-r-1, k-r-1)
      if (id.r < 2 || id.n < id.r + 1 || id.k < 0 || id.k > id.n)
        throw std::domain_error("uniform_count BD: bad parameters");
      return Int(id.r + 1) * binom(id.n - id.r - 1, id.k - id.r) +
             binom(id.n - id.r - 1, id.k - id.r - 1);
    }
    case Kind::FRS_UNIF: {
      // |F_r(n,k,s)| = s + sum_{j=j0}^{k+1-s} C(k+1-s, j) C(n-k-1, k-s-j),
      // j0 = floor((r-s-1)/(r-s) (k+1-s)) + 1
      if (id.r < 2 || id.s < 0 || id.s > id.r - 1 || id.k < id.s || id.k > id.n)
        throw std::domain_error("uniform_count FRS: bad parameters");
      Rat frac = rat(id.r - id.s - 1, id.r - id.s) * Rat(id.k + 1 - id.s);
      long j0 = floor_rat(frac).get_si() + 1;
      Int total(id.s);
      for (long j = j0; j <= id.k + 1 - id.s; ++j)
        total += binom(id.k + 1 - id.s, j) * binom(id.n - id.k - 1, id.k - id.s - j);
      return total;
    }
    default:
      throw std::domain_error("uniform_count: not a uniform id: " + id.str());
  }
}

}  // namespace triwise
