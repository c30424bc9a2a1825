#include <catch2/catch_amalgamated.hpp>

#include "triwise/bounds.hpp"
#include "triwise/prove.hpp"

using namespace triwise;

TEST_CASE("m3 limit profile") {
  CHECK(m3_limit(rat(1, 3)) == rat(1, 9));  // both pieces agree: continuity
  CHECK(Rat(4) * pow_rat(rat(1, 3), 3) * rat(2, 3) + pow_rat(rat(1, 3), 4) == rat(1, 9));
  CHECK(m3_limit(rat(9, 20)) == rat(38637, 160000));
  CHECK(m3_limit(rat(3, 4)) == 1);
  CHECK(m3_limit(rat(1, 2)) == rat(5, 16));   // left piece closed at 1/2
  CHECK(m3_limit(rat(2, 3)) == rat(2, 3));    // left piece closed at 2/3
  // jumps upward at 1/2 and 2/3
  CHECK(m3_limit(rat(501, 1000)) > m3_limit(rat(1, 2)));
  CHECK(m3_limit(rat(667, 1000)) > m3_limit(rat(2, 3)));
  CHECK_THROWS_AS(m3_limit(rat(0)), std::domain_error);
}

TEST_CASE("epsilon_p") {
  CHECK(epsilon_p(rat(1, 3)) == 0);
  CHECK(epsilon_p(rat(2, 5)) == rat(4, 25));
  CHECK(epsilon_p(rat(1, 2)) == rat(1, 4));
  // min over [2/5,1/2] is 4/25, attained at 2/5
  Expr margin = (Rat(2) - Rat(3) * Expr::param()) * (Rat(3) * Expr::param() - Rat(1)) - rat(4, 25);
  CHECK(prove_nonneg(margin, {rat(2, 5), rat(1, 2)}).ok());
}

TEST_CASE("alpha enclosures and fixed point") {
  Interval a12 = alpha_num(rat(1, 2));
  // alpha(1/2) = (sqrt(5)-1)/2
  Interval golden = (sqrt_enclosure(rat(5)) - Interval(rat(1))) * Interval(rat(1, 2));
  CHECK(a12.lo <= golden.hi);
  CHECK(a12.hi >= golden.lo);
  CHECK(a12.width() < pow_rat(rat(1, 10), 20));

  // fixed-point residual |alpha - (p + q alpha^3)| small at 50 sample points
  for (int k = 1; k <= 50; ++k) {
    Rat p = rat(k, 77);  // inside (0, 2/3)
    Interval a = alpha_num(p, 192);
    Interval residual = a - (Interval(p) + Interval(1 - p) * pow_interval(a, 3));
    CHECK(residual.contains(rat(0)));
    CHECK(residual.width() < pow_rat(rat(1, 10), 25));
  }
  CHECK_THROWS_AS(alpha_num(rat(2, 3)), std::domain_error);
}

TEST_CASE("alpha via general root finder") {
  for (Rat p : {rat(2, 5), rat(1, 2), rat(1, 100)}) {
    Interval direct = alpha_num(p, 192);
    Interval rooted = root_alpha_general(p, 3);
    CHECK(rooted.lo <= direct.hi);
    CHECK(rooted.hi >= direct.lo);
  }
  // alpha(p) ~ p for small p
  Interval small = root_alpha_general(rat(1, 100), 3);
  CHECK(small.lo > rat(1, 100));
  CHECK(small.hi < rat(101, 10000));
}

TEST_CASE("beta root identities") {
  // beta(p,p,p) = alpha(p)^3 to enclosure width 1e-20
  for (Rat p : {rat(2, 5), rat(1, 2)}) {
    Interval beta = root_beta({p, p, p}, pow_rat(rat(1, 10), 25));
    Interval alpha3 = pow_interval(alpha_num(p, 256), 3);
    CHECK(beta.lo <= alpha3.hi);
    CHECK(beta.hi >= alpha3.lo);
    CHECK(abs(beta.mid() - alpha3.mid()) < pow_rat(rat(1, 10), 20));
  }
  // beta(p1,p2,p3) <= alpha(p1) alpha(p2) alpha(p3), strict gap at distinct biases
  Interval beta = root_beta({rat(2, 5), rat(9, 20), rat(1, 2)});
  Interval prod = alpha_num(rat(2, 5), 192) * alpha_num(rat(9, 20), 192) * alpha_num(rat(1, 2), 192);
  CHECK(beta.hi < prod.lo);
}

TEST_CASE("alpha is convex on a rational grid") {
  // second differences of the midpoint enclosure, with widths small enough
  // that the sign is certain
  auto mid_alpha = [](const Rat& p) { return alpha_num(p, 256).mid(); };
  CHECK(second_differences_nonneg(mid_alpha, rat(1, 10), rat(3, 5), 120));
}

TEST_CASE("tilde_alpha dominates alpha on [2/5,1/2]") {
  Interval dom{rat(2, 5), rat(1, 2)};
  auto r = prove_nonneg(tilde_alpha_expr() - alpha_expr(), dom);
  CHECK(r.ok());
  // chord endpoints: tilde_alpha(1/2) = alpha(1/2)
  Interval at_half = tilde_alpha_expr().eval_interval(Interval(rat(1, 2)), 192);
  Interval alpha_half = alpha_num(rat(1, 2), 192);
  CHECK(at_half.lo <= alpha_half.hi);
  CHECK(at_half.hi >= alpha_half.lo);
}

TEST_CASE("gmps bound values") {
  // r=3, t=1, p=1/3: the maximum is 3p = 1 at a = 1
  auto g = gmps_bound(3, 1, rat(1, 3), 10);
  CHECK(g.value == 1);
  CHECK(g.maximizer == 1);
  // r=2, t=1, p=1/2: 1 - q^a + p^a = 1 for every a
  auto g2 = gmps_bound(2, 1, rat(1, 2), 8);
  CHECK(g2.value == 1);
  // r=3, t=2, p=1/2: approaches 1 from below
  auto g3 = gmps_bound(3, 2, rat(1, 2), 30);
  CHECK(g3.value < 1);
  CHECK(g3.maximizer == 30);  // non-decreasing in a at p = 1/2
  CHECK(Rat(1) - g3.value < pow_rat(rat(1, 10), 7));
}

TEST_CASE("gmps bound stays below 3p for r=3 t=1") {
  for (int k = 0; k <= 20; ++k) {
    Rat p = rat(1, 3) + rat(k, 120);  // grid across [1/3, 1/2]
    auto g = gmps_bound(3, 1, p, 40);
    CHECK(g.value <= 3 * p);
  }
}

TEST_CASE("ak_measure and f_t limit") {
  // f_2(2/5): i = 2, sum_{j=4}^{6} C(6,j) p^j q^(6-j) = 112/625
  CHECK(f_t_limit(2, rat(2, 5)) == rat(112, 625));
  for (long t = 2; t <= 5; ++t) CHECK(f_t_limit(t, rat(1, 2)) == rat(1, 2));
  // boundary p = 1/3 for t=2: A(n,2,0) and A(n,2,1) tie
  Rat a0 = measure_formula(ConstructionId::ak(8, 2, 0), rat(1, 3));
  Rat a1 = measure_formula(ConstructionId::ak(8, 2, 1), rat(1, 3));
  CHECK(a0 == a1);
  CHECK(ak_measure(8, 2, rat(1, 3)).value == a0);
  CHECK_THROWS_AS(f_t_limit(2, rat(3, 5)), std::domain_error);
}

TEST_CASE("f_t is convex on a grid and below its chord") {
  for (long t = 2; t <= 5; ++t) {
    auto ft = [t](const Rat& p) { return f_t_limit(t, p); };
    CHECK(second_differences_nonneg(ft, rat(1, 5), rat(1, 2), 200));
    // AK(n,t,p) <= f_t(p) <= tilde_a_t(p) on [2/5,1/2] spot checks, n <= 14
    for (int k = 0; k <= 10; ++k) {
      Rat p = rat(2, 5) + rat(k, 100);
      Rat ftp = f_t_limit(t, p);
      CHECK(ak_measure(14, t, p).value <= ftp);
      CHECK(ftp <= tilde_a_eval(t, p));
    }
  }
}

TEST_CASE("tilde_a slopes match the recorded exact rationals") {
  CHECK(tilde_a_slope(2) == rat(401, 125));
  CHECK(tilde_a_slope(3) == rat(1565029, 390625));
  CHECK(tilde_a_slope(4) == Rat(Int("5391614441"), Int("1220703125")));
  CHECK(tilde_a_slope(5) == Rat(Int("17729648464189"), Int("3814697265625")));
  // chord endpoint: tilde_a_2(2/5) = f_2(2/5) = 112/625
  CHECK(tilde_a_eval(2, rat(2, 5)) == rat(112, 625));
  CHECK(tilde_a_eval(3, rat(1, 2)) == rat(1, 2));
  CHECK_THROWS_AS(tilde_a_slope(6), std::domain_error);
}

TEST_CASE("d(p) minorizes 1/c on [2/5,1/2]") {
  CHECK(d_taylor(rat(2, 5)) == rat(1, 2));  // touches 1/c at the expansion point
  CHECK(d_taylor(rat(1, 2)) == rat(1375, 864) - rat(325, 216) + rat(37, 54));
  Expr inv_c = Expr::constant(Rat(1)) / c_expr();
  Expr d = Expr::constant(rat(1375, 216)) * Expr::pow(Expr::param(), 2) -
           Expr::constant(rat(325, 108)) * Expr::param() + Expr::constant(rat(37, 54));
  auto r = prove_nonneg(inv_c - d, {rat(2, 5), rat(1, 2)});
  CHECK(r.ok());
  CHECK(r.method == "exact-radical");
}
