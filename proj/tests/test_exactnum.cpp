#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "triwise/expr.hpp"
#include "triwise/interval.hpp"
#include "triwise/poly.hpp"
#include "triwise/prove.hpp"
#include "triwise/rational.hpp"

using namespace triwise;

namespace {
Expr P() { return Expr::param(); }
Expr C(long n, long d = 1) { return Expr::constant(rat(n, d)); }
}  // namespace

TEST_CASE("rational parsing is exact") {
  CHECK(parse_rat("2/5") == rat(2, 5));
  CHECK(parse_rat("0.453264") == rat(453264, 1000000));
  CHECK(parse_rat("0.45") == rat(9, 20));
  CHECK(parse_rat("-3") == rat(-3));
  CHECK(parse_rat("1.5") == rat(3, 2));
  CHECK_THROWS(parse_rat("1/0"));
}

TEST_CASE("binomials use the combinatorial zero convention") {
  CHECK(binom(6, 3) == 24 - 4);  // C(6,3)=20
  CHECK(binom(10, 0) == 1);
  CHECK(binom(4, 7) == 0);
  CHECK(binom(4, -1) == 0);
  CHECK(binom(Int(120), 60) == Int("96614908840363322603893139521372656"));
}

TEST_CASE("polynomial arithmetic") {
  // (3p)(3p-1) + 2(1-2p) + p = 9p^2 - 6p + 2
  Poly p = Poly::x();
  Poly lhs = (p * Rat(3)) * (p * Rat(3) - Poly::constant(Rat(1))) +
             (Poly::constant(Rat(1)) - p * Rat(2)) * Rat(2) + p;
  CHECK(lhs == Poly({rat(2), rat(-6), rat(9)}));
  CHECK(lhs.eval(rat(2, 5)) == rat(26, 25));
  CHECK((Poly::zero() + lhs) == lhs);
}

TEST_CASE("sturm root counting") {
  Poly p = Poly::x();
  Poly f = Poly({rat(2), rat(-6), rat(9)});  // 9p^2-6p+2, discriminant < 0
  CHECK(sturm_count_roots(f, {rat(0), rat(1)}) == 0);
  Poly g = p * (Poly::constant(Rat(1)) - p);  // roots 0, 1
  CHECK(sturm_count_roots(g, {rat(-1), rat(2)}) == 2);
  CHECK(sturm_count_roots(g, {rat(0), rat(2)}) == 1);  // (0,2] excludes 0
  CHECK_THROWS(sturm_count_roots(Poly::zero(), {rat(0), rat(1)}));
  // repeated roots counted once
  Poly h = g * g;
  CHECK(sturm_count_roots(h, {rat(-1), rat(2)}) == 2);
}

TEST_CASE("sturm agrees with factored polynomials") {
  std::mt19937_64 rng(20240901);
  for (int trial = 0; trial < 200; ++trial) {
    int nroots = 1 + static_cast<int>(rng() % 4);
    Poly f = Poly::constant(rat(1 + static_cast<long>(rng() % 3)));
    std::vector<Rat> roots;
    for (int i = 0; i < nroots; ++i) {
      Rat r = rat(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 4));
      roots.push_back(r);
      f = f * (Poly::x() - Poly::constant(r));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    long expect = 0;
    for (const Rat& r : roots)
      if (r > -20 && r <= 20) ++expect;
    CHECK(sturm_count_roots(f, {rat(-20), rat(20)}) == expect);
  }
}

TEST_CASE("exact polynomial nonnegativity") {
  Poly p = Poly::x();
  Poly pq = p * (Poly::constant(Rat(1)) - p);
  CHECK(poly_nonneg_on(pq, {rat(0), rat(1)}).nonneg);          // touches 0 at ends
  CHECK(poly_nonneg_on(pq * pq, {rat(-2), rat(2)}).nonneg);    // interior touch
  auto bad = poly_nonneg_on(-pq, {rat(1, 3), rat(1, 2)});
  REQUIRE_FALSE(bad.nonneg);
  CHECK((-pq).eval(*bad.witness) < 0);
  CHECK(poly_nonneg_on(Poly::zero(), {rat(0), rat(1)}).nonneg);
}

TEST_CASE("interval sqrt enclosures are outward and tight") {
  Interval s5 = sqrt_enclosure(rat(5), 128);
  CHECK(s5.lo * s5.lo <= 5);
  CHECK(s5.hi * s5.hi >= 5);
  CHECK(s5.width() <= pow_rat(rat(1, 10), 30));
  CHECK(sqrt_enclosure(rat(0)).is_point());
  CHECK(sqrt_enclosure(rat(9, 4)).is_point());  // exact square
  CHECK(sqrt_enclosure(rat(9, 4)).lo == rat(3, 2));
}

TEST_CASE("interval eval contains exact values") {
  // e = sqrt(1-4p^2) at the point 1/2: enclosure of 0
  Expr e = Expr::sqrt(C(1) - C(4) * Expr::pow(P(), 2));
  Interval at_half = e.eval_interval(Interval(rat(1, 2)));
  CHECK(at_half.lo >= 0);
  CHECK(at_half.contains(rat(0)));
  // e = p + (1-p) over a box: contains 1 (superset allowed)
  Expr one = P() + (C(1) - P());
  CHECK(one.eval_interval({rat(2, 5), rat(1, 2)}).contains(rat(1)));
}

TEST_CASE("interval eval is inclusion monotone and contains point samples") {
  std::mt19937_64 rng(77001);
  auto rand_rat = [&](long lo, long hi) {
    long den = 1 + static_cast<long>(rng() % 16);
    long lo_n = lo * den, hi_n = hi * den;
    long num = lo_n + static_cast<long>(rng() % static_cast<unsigned long>(hi_n - lo_n + 1));
    return rat(num, den);
  };
  // random expression trees over safe ops (no division; sqrt of squares)
  std::function<Expr(int)> gen = [&](int depth) -> Expr {
    if (depth == 0 || rng() % 4 == 0)
      return rng() % 2 ? P() : Expr::constant(rand_rat(-3, 3));
    switch (rng() % 4) {
      case 0: return gen(depth - 1) + gen(depth - 1);
      case 1: return gen(depth - 1) - gen(depth - 1);
      case 2: return gen(depth - 1) * gen(depth - 1);
      default: return Expr::sqrt(Expr::pow(gen(depth - 1), 2));
    }
  };
  for (int trial = 0; trial < 100; ++trial) {
    Expr e = gen(3);
    Rat a = rand_rat(0, 1), b = rand_rat(0, 1);
    if (a > b) std::swap(a, b);
    Interval box{a, b};
    Interval big{a - rat(1, 7), b + rat(1, 9)};
    Interval small_iv = e.eval_interval(box);
    Interval big_iv = e.eval_interval(big);
    CHECK(big_iv.lo <= small_iv.lo);
    CHECK(big_iv.hi >= small_iv.hi);
    for (int s = 0; s < 5; ++s) {
      Rat x = a + (b - a) * rat(s, 4);
      auto exact = e.eval_exact(x);
      REQUIRE(exact.has_value());
      CHECK(small_iv.contains(*exact));
    }
  }
}

TEST_CASE("prove_nonneg basic verdicts") {
  Expr pq = P() * (C(1) - P());
  CHECK(prove_nonneg(pq, {rat(1, 3), rat(1, 2)}).ok());

  // 3p - (1-q^2) - 2p^2 simplifies to p - p^2 >= 0
  Expr q = C(1) - P();
  Expr f = C(3) * P() - (C(1) - Expr::pow(q, 2)) - C(2) * Expr::pow(P(), 2);
  auto r = prove_nonneg(f, {rat(1, 3), rat(1, 2)});
  CHECK(r.ok());
  CHECK(r.method == "exact-poly");

  auto bad = prove_nonneg(C(0) - (P() - C(2, 5)) * (C(1, 2) - P()), {rat(2, 5), rat(1, 2)});
  REQUIRE(bad.status == ProofStatus::Violated);
  REQUIRE(bad.witness.has_value());
  // the witness box is truly violating at its midpoint
  Expr g = C(0) - (P() - C(2, 5)) * (C(1, 2) - P());
  CHECK(g.eval_exact(bad.witness->mid()).value() < 0);
}

TEST_CASE("prove_nonneg margin semantics") {
  // f = -1/100 fails at margin 0 but passes margin 1/50
  Expr f = C(-1, 100);
  CHECK(prove_nonneg(f, {rat(0), rat(1)}).status == ProofStatus::Violated);
  CHECK(prove_nonneg(f, {rat(0), rat(1)}, rat(1, 50)).ok());
}

TEST_CASE("prove_nonneg handles endpoint-tight radical expressions") {
  // s = sqrt(1-4p^2); c = (1+s)/(2p); p^3 - p^2 q / c >= 0 on [2/5,1/2]
  // with equality exactly at p = 1/2.
  Expr s = Expr::sqrt(C(1) - C(4) * Expr::pow(P(), 2));
  Expr c = (C(1) + s) / (C(2) * P());
  Expr q = C(1) - P();
  Expr y3 = Expr::pow(P(), 3) - Expr::pow(P(), 2) * q / c;
  Interval dom{rat(2, 5), rat(1, 2)};
  auto r = prove_nonneg(y3, dom);
  CHECK(r.ok());
  CHECK(r.method == "exact-radical");

  // and the identity c * (1/c) - 1 == 0 normalizes to exact zero
  auto idr = prove_nonneg(c * (C(1) / c) - C(1), dom);
  CHECK(idr.ok());
  CHECK(idr.method == "exact-zero");

  // flipping the sign must be caught even though the value touches 0
  Expr neg = Expr::pow(P(), 2) * q / c - Expr::pow(P(), 3);
  CHECK(prove_nonneg(neg, dom).status == ProofStatus::Violated);
}

TEST_CASE("prove_nonneg certifies a chord above a convex sqrt function") {
  // alpha(p) = (sqrt((1+3p)/(1-p)) - 1)/2 lies below its chord on [2/5,1/2];
  // equality holds at both endpoints, so bisection alone cannot settle it.
  Expr alpha = (Expr::sqrt((C(1) + C(3) * P()) / (C(1) - P())) - C(1)) / C(2);
  Expr s5 = Expr::sqrt(C(5)), s33 = Expr::sqrt(C(33));
  Expr intercept = (C(-3) - C(12) * s5 + C(5) * s33) / C(6);
  Expr slope = (C(30) * s5 - C(10) * s33) / C(6);
  Expr chord = intercept + slope * P();
  Interval dom{rat(2, 5), rat(1, 2)};
  auto r = prove_nonneg(chord - alpha, dom);
  CHECK(r.ok());
  CHECK(r.method == "radical-split");
  // the reverse direction must not be provable (chord is strictly above inside)
  CHECK_FALSE(prove_nonneg(alpha - chord, dom).ok());
}
