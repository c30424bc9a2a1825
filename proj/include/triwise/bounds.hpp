#pragma once

// Closed-form bound functions: the four-piece limit profile M3(p), the walk
// root alpha(p) and its relatives, the stability gap eps_p, the GMPS
// cross-intersecting bound, AK measures and their limit f_t(p), chord upper
// bounds (tilde-alpha, tilde-a_t), and the Taylor minorant d(p) for 1/c.

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "triwise/constructions.hpp"
#include "triwise/expr.hpp"
#include "triwise/interval.hpp"
#include "triwise/prove.hpp"
#include "triwise/rational.hpp"

namespace triwise {

// M3(p): p^2 | 4p^3q+p^4 | p | 1, with closed-left pieces at 1/2 and 2/3 and
// continuity at 1/3.
inline Rat m3_limit(const Rat& p) {
  if (p <= 0 || p >= 1) throw std::domain_error("m3_limit: p outside (0,1)");
  Rat q = 1 - p;
  if (p <= rat(1, 3)) return p * p;
  if (p <= rat(1, 2)) return Rat(4) * pow_rat(p, 3) * q + pow_rat(p, 4);
  if (p <= rat(2, 3)) return p;
  return Rat(1);
}

inline Rat epsilon_p(const Rat& p) { return (2 - 3 * p) * (3 * p - 1); }

// alpha(p) = ((sqrt((1+3p)/(1-p)) - 1)/2, the unique root of X = p + q X^3
// in (0,1); defined for 0 < p < 2/3.
inline Expr alpha_expr() {
  Expr p = Expr::param();
  Expr radicand = (Expr::constant(Rat(1)) + Rat(3) * p) / (Expr::constant(Rat(1)) - p);
  return (Expr::sqrt(radicand) - Rat(1)) / Rat(2);
}

inline Interval alpha_num(const Rat& p, unsigned bits = 128) {
  if (p <= 0 || p >= rat(2, 3)) throw std::domain_error("alpha: need 0 < p < 2/3");
  return alpha_expr().eval_interval(Interval(p), bits);
}

namespace bounds_detail {

// Enclosure of the unique root in (0,1) of a strictly sign-changing rational
// function, by bisection on exact signs. `f` must be positive at 0+ and
// negative just left of 1.
inline Interval bisect_root(const std::function<Rat(const Rat&)>& f, const Rat& tol) {
  Rat lo(0), hi(1);
  // find a negative right bracket strictly inside (0,1)
  Rat step = rat(1, 2);
  while (true) {
    Rat x = 1 - step;
    if (f(x) < 0) { hi = x; break; }
    step /= 2;
    if (step < rat(1, 1000000000L))
      throw std::domain_error("bisect_root: no sign change found in (0,1)");
  }
  while (hi - lo > tol) {
    Rat mid = (lo + hi) / 2;
    Rat v = f(mid);
    if (v == 0) return Interval(mid);
    (v > 0 ? lo : hi) = mid;
  }
  return {lo, hi};
}

}  // namespace bounds_detail

// Root of X = p + q X^r in (0,1), encolsed to width <= tol.
inline Interval root_alpha_general(const Rat& p, int r, const Rat& tol = pow_rat(rat(1, 10), 25)) {
  if (r < 2) throw std::domain_error("root_alpha_general: need r >= 2");
  if (p <= 0 || p >= 1 - rat(1, r)) throw std::domain_error("root_alpha_general: need 0 < p < 1 - 1/r");
  Rat q = 1 - p;
  return bounds_detail::bisect_root(
      [&](const Rat& x) -> Rat { return p + q * pow_rat(x, r) - x; }, tol);
}

// Root of X = prod_i (p_i + q_i X) in (0,1).
inline Interval root_beta(const std::vector<Rat>& ps, const Rat& tol = pow_rat(rat(1, 10), 25)) {
  int r = static_cast<int>(ps.size());
  if (r < 2) throw std::domain_error("root_beta: need r >= 2 biases");
  for (const Rat& p : ps)
    if (p <= 0 || p >= 1 - rat(1, r)) throw std::domain_error("root_beta: need 0 < p_i < 1 - 1/r");
  return bounds_detail::bisect_root(
      [&](const Rat& x) -> Rat {
        Rat prod(1);
        for (const Rat& p : ps) prod *= p + (1 - p) * x;
        return prod - x;
      },
      tol);
}

// GMPS bound for non-empty r-cross t-intersecting families:
// max over t <= a <= n of (1 - sum_{j<t} C(a,j) p^j q^{a-j}) + (r-1) p^a.
struct GmpsBound {
  Rat value;
  long maximizer;
};

inline GmpsBound gmps_bound(int r, int t, const Rat& p, long n) {
  if (r < 2 || t < 1 || n < t) throw std::domain_error("gmps_bound: need r >= 2, 1 <= t <= n");
  if (p <= 0 || p > rat(1, 2)) throw std::domain_error("gmps_bound: need 0 < p <= 1/2");
  Rat q = 1 - p;
  std::optional<Rat> best;
  long best_a = t;
  for (long a = t; a <= n; ++a) {
    Rat head(0);
    for (long j = 0; j < t; ++j) head += Rat(binom(a, j)) * pow_rat(p, j) * pow_rat(q, a - j);
    Rat val = (1 - head) + Rat(r - 1) * pow_rat(p, a);
    if (!best || val > *best) { best = val; best_a = a; }
  }
  return {*best, best_a};
}

// AK(n,t,p) = max measure of a 2-wise t-intersecting family, attained on the
// Frankl families A(n,t,i).
struct AkMeasure {
  Rat value;
  long maximizer_i;
};

inline AkMeasure ak_measure(long n, long t, const Rat& p) {
  if (t < 1 || n < t) throw std::domain_error("ak_measure: need 1 <= t <= n");
  std::optional<Rat> best;
  long best_i = 0;
  for (long i = 0; t + 2 * i <= n; ++i) {
    Rat val = measure_formula(ConstructionId::ak(n, t, i), p);
    if (!best || val > *best) { best = val; best_i = i; }
  }
  return {*best, best_i};
}

// f_t(p) = lim_n AK(n,t,p) for p < 1/2, i = floor((t-1)p/(1-2p)); the
// Katona value 1/2 exactly at p = 1/2.
inline Rat f_t_limit(long t, const Rat& p) {
  if (t < 1) throw std::domain_error("f_t_limit: need t >= 1");
  if (p <= 0 || p > rat(1, 2)) throw std::domain_error("f_t_limit: need 0 < p <= 1/2");
  if (p == rat(1, 2)) return rat(1, 2);
  Rat q = 1 - p;
  long i = floor_rat(Rat(t - 1) * p / (1 - 2 * p)).get_si();
  long m = t + 2 * i;
  Rat total(0);
  for (long j = t + i; j <= m; ++j)
    total += Rat(binom(m, j)) * pow_rat(p, j) * pow_rat(q, m - j);
  return total;
}

// Chord of g through (p1, g(p1)) and (p2, g(p2)) as an expression in p.
inline Expr chord(const Expr& g_at_p1, const Expr& g_at_p2, const Rat& p1, const Rat& p2) {
  if (!(p1 < p2)) throw std::domain_error("chord: need p1 < p2");
  Expr slope = (g_at_p2 - g_at_p1) / Expr::constant(p2 - p1);
  return slope * (Expr::param() - Rat(p1)) + g_at_p1;
}

// tilde-alpha: the chord of alpha between 2/5 and 1/2, with the exact
// algebraic endpoint values (sqrt(33)-3)/6 and (sqrt(5)-1)/2.
inline Expr tilde_alpha_expr() {
  Expr s5 = Expr::sqrt(Expr::constant(Rat(5)));
  Expr s33 = Expr::sqrt(Expr::constant(Rat(33)));
  Expr at_25 = (s33 - Rat(3)) / Rat(6);
  Expr at_12 = (s5 - Rat(1)) / Rat(2);
  return chord(at_25, at_12, rat(2, 5), rat(1, 2));
}

// tilde-a_t: the chord of f_t between 2/5 and 1/2; rational coefficients.
// Slopes for t = 2..5 are pinned from f_t evaluations, matching
// 401/125, 1565029/390625, 5391614441/1220703125, 17729648464189/3814697265625.
inline Rat tilde_a_slope(long t) {
  if (t < 2 || t > 5) throw std::domain_error("tilde_a: supported for t = 2..5");
  return (rat(1, 2) - f_t_limit(t, rat(2, 5))) / rat(1, 10);
}

inline Expr tilde_a_expr(long t) {
  Rat slope = tilde_a_slope(t);
  return Expr::constant(rat(1, 2)) + Expr::constant(slope) * (Expr::param() - rat(1, 2));
}

inline Rat tilde_a_eval(long t, const Rat& p) {
  return rat(1, 2) + tilde_a_slope(t) * (p - rat(1, 2));
}

// d(p) = 1375 p^2 / 216 - 325 p / 108 + 37/54, the quadratic minorant of
// 1/c used in the paper's own bound chain (kept for checking that claim).
inline Rat d_taylor(const Rat& p) {
  return rat(1375, 216) * p * p - rat(325, 108) * p + rat(37, 54);
}

// c(p) = (1 + sqrt(1-4p^2)) / (2p).
inline Expr c_expr() {
  Expr p = Expr::param();
  Expr s = Expr::sqrt(Expr::constant(Rat(1)) - Rat(4) * Expr::pow(p, 2));
  return (Expr::constant(Rat(1)) + s) / (Rat(2) * p);
}

// Second-difference convexity check of a function on a rational grid.
template <typename Fn>
bool second_differences_nonneg(Fn&& f, const Rat& lo, const Rat& hi, int grid_points) {
  Rat h = (hi - lo) / Rat(grid_points + 1);
  for (int k = 1; k <= grid_points; ++k) {
    Rat x = lo + h * Rat(k);
    if (f(x - h) + f(x + h) - 2 * f(x) < 0) return false;
  }
  return true;
}

}  // namespace triwise
