#pragma once

// prove_nonneg: rigorous verification that an expression is non-negative on
// a closed rational interval. Three routes, tried in order:
//
//  1. exact, for expressions that normalize with rational coefficients:
//     Sturm-based sign analysis decides the claim outright (this is what
//     certifies inequalities that are tight at interval endpoints, and
//     identities that are exactly zero);
//  2. endpoint factoring, for polynomial data over a constant-radical
//     coefficient field: exact roots at the endpoints are divided out and
//     the strictly-signed remainder is bisected;
//  3. adaptive interval bisection on the raw expression tree.
//
// A SUCCESS from any route is sound: route 1 and 2 conclusions are exact,
// and route 3 accepts a leaf box only when its enclosure lower bound
// clears zero.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "triwise/expr.hpp"
#include "triwise/normal_form.hpp"

namespace triwise {

enum class ProofStatus { Proved, Violated, Inconclusive };

struct ProofReport {
  ProofStatus status = ProofStatus::Inconclusive;
  std::string method;
  std::optional<Interval> witness;  // violating / undecided box
  long boxes_examined = 0;

  bool ok() const { return status == ProofStatus::Proved; }
};

namespace prove_detail {

inline ProofReport proved(std::string method, long boxes = 0) {
  return {ProofStatus::Proved, std::move(method), std::nullopt, boxes};
}
inline ProofReport violated(std::string method, Interval w, long boxes = 0) {
  return {ProofStatus::Violated, std::move(method), std::move(w), boxes};
}
inline ProofReport inconclusive(std::string method, std::optional<Interval> w, long boxes = 0) {
  return {ProofStatus::Inconclusive, std::move(method), std::move(w), boxes};
}

// Exact sign of U(x) + V(x) sqrt(R(x)) at a rational point.
inline int radical_sign_at(const Poly& U, const Poly& V, const Poly& R, const Rat& x) {
  Rat u = U.eval(x), v = V.eval(x), r = R.eval(x);
  if (r < 0) throw UndefinedExprError("radical_sign_at: negative radicand");
  if (r == 0 || v == 0) return u > 0 ? 1 : (u < 0 ? -1 : 0);
  if (u >= 0 && v > 0) return 1;
  if (u <= 0 && v < 0) return -1;
  // strictly opposite signs: compare u^2 against v^2 r
  Rat lhs = u * u, rhs = v * v * r;
  if (lhs == rhs) return 0;
  if (u > 0) return lhs > rhs ? 1 : -1;  // positive part vs negative radical
  return rhs > lhs ? 1 : -1;             // radical part vs negative u
}

// Complete decision of U + V sqrt(R) >= 0 on [a,b], all data rational.
// Sign changes can only happen on the zero set of the locator polynomial,
// so checking exact signs at the locator's sign samples decides the claim.
inline ProofReport radical_nonneg_exact(const Poly& U, const Poly& V, const Poly& R,
                                        const Interval& iv) {
  auto rnn = poly_nonneg_on(R, iv);
  if (!rnn.nonneg)
    throw UndefinedExprError("radical_nonneg_exact: radicand negative inside interval");
  Poly W = U * U - V * V * R;
  Poly locator = W;
  if (locator.is_zero()) {
    locator = Poly::constant(Rat(1));
    for (const Poly* part : {&U, &V, &R})
      if (!part->is_zero()) locator = locator * *part;
    if (locator.degree() <= 0) return proved("exact-radical");  // U, V both zero
  }
  long checked = 0;
  for (const Rat& x : sign_samples(locator, iv.lo, iv.hi)) {
    ++checked;
    if (radical_sign_at(U, V, R, x) < 0)
      return violated("exact-radical", Interval(x), checked);
  }
  return proved("exact-radical", checked);
}

// f >= 0 on [a,b] for f in K[p] with K-valued (constant-radical)
// coefficients: divide out exact roots at the endpoints, require the
// remainder to be strictly positive at both ends, then certify the open
// interior by bisection on interval Horner evaluation.
inline ProofReport kpoly_nonneg(const KContext& ctx, KPoly f, const Interval& iv,
                                int max_depth, unsigned bits) {
  if (f.is_zero()) return proved("endpoint-factor");
  if (iv.is_point()) {
    int s = sign(ctx, f.eval(iv.lo));
    return s >= 0 ? proved("endpoint-factor") : violated("endpoint-factor", iv);
  }
  long mb = 0;
  while (!f.is_zero() && f.eval(iv.lo).is_zero()) f = f.deflate(iv.lo);
  while (!f.is_zero() && f.eval(iv.hi).is_zero()) { f = f.deflate(iv.hi); ++mb; }
  if (f.is_zero()) return proved("endpoint-factor");
  if (mb % 2 == 1) f = f.negate();  // orient: (p-a)^ma (p-b)^mb sign on (a,b)
  int sa = sign(ctx, f.eval(iv.lo)), sb = sign(ctx, f.eval(iv.hi));
  if (sa < 0 || sb < 0) {
    // strictly negative just inside the corresponding endpoint
    Rat step = iv.width() / 1024;
    Interval w = sa < 0 ? Interval{iv.lo, iv.lo + step} : Interval{iv.hi - step, iv.hi};
    return violated("endpoint-factor", w);
  }
  // Interior bisection; converges when the remainder is strictly positive.
  std::vector<std::pair<Interval, int>> stack{{iv, 0}};
  long boxes = 0;
  while (!stack.empty()) {
    auto [box, depth] = stack.back();
    stack.pop_back();
    ++boxes;
    Interval val = f.eval_interval(ctx, box, bits);
    if (val.lo >= 0) continue;
    if (val.hi < 0) return violated("endpoint-factor", box, boxes);
    if (depth >= max_depth) return inconclusive("endpoint-factor", box, boxes);
    Rat m = box.mid();
    stack.emplace_back(Interval{m, box.hi}, depth + 1);
    stack.emplace_back(Interval{box.lo, m}, depth + 1);
  }
  return proved("endpoint-factor", boxes);
}

inline ProofReport nf_nonneg(const NormalForm& nf, const Interval& iv, int max_depth,
                             unsigned bits) {
  if (nf.is_identically_zero()) return proved("exact-zero");
  auto dsign = nf_detail::constant_sign_on(nf.D, iv);
  if (!dsign) return inconclusive("normal-form (denominator vanishes)", iv);
  KPoly A = *dsign > 0 ? nf.A : nf.A.negate();
  KPoly B = *dsign > 0 ? nf.B : nf.B.negate();

  if (B.is_zero()) {
    if (A.is_rational()) {
      auto res = poly_nonneg_on(A.to_poly(), iv);
      if (res.nonneg) return proved("exact-poly");
      return violated("exact-poly", Interval(*res.witness));
    }
    return kpoly_nonneg(nf.ctx, A, iv, max_depth, bits);
  }

  if (A.is_rational() && B.is_rational())
    return radical_nonneg_exact(A.to_poly(), B.to_poly(), nf.R, iv);

  if (B.is_rational()) {
    // Split on the sign of B; each branch reduces to radical-free claims.
    Poly b = B.to_poly();
    KPoly A2 = mul(nf.ctx, A, A);
    KPoly B2R = KPoly::from_poly(b * b * nf.R);
    if (poly_nonneg_on(-b, iv).nonneg) {
      // B <= 0: f >= 0  <=>  A >= 0 and A^2 - B^2 R >= 0 (both necessary)
      ProofReport r1 = kpoly_nonneg(nf.ctx, A, iv, max_depth, bits);
      if (r1.status == ProofStatus::Violated) return r1;
      ProofReport r2 = kpoly_nonneg(nf.ctx, sub(A2, B2R), iv, max_depth, bits);
      if (r2.status == ProofStatus::Violated) return r2;
      if (r1.ok() && r2.ok()) return proved("radical-split", r1.boxes_examined + r2.boxes_examined);
      return inconclusive("radical-split", iv, r1.boxes_examined + r2.boxes_examined);
    }
    if (poly_nonneg_on(b, iv).nonneg) {
      // B >= 0: either of A >= 0 or B^2 R - A^2 >= 0 suffices.
      ProofReport r1 = kpoly_nonneg(nf.ctx, A, iv, max_depth, bits);
      if (r1.ok()) return r1;
      ProofReport r2 = kpoly_nonneg(nf.ctx, sub(B2R, A2), iv, max_depth, bits);
      if (r2.ok()) return proved("radical-split", r1.boxes_examined + r2.boxes_examined);
      return inconclusive("radical-split", iv, r1.boxes_examined + r2.boxes_examined);
    }
  }
  return inconclusive("normal-form (unsupported shape)", iv);
}

inline ProofReport bisect_nonneg(const Expr& f, const Interval& iv, int max_depth,
                                 unsigned bits) {
  std::vector<std::pair<Interval, int>> stack{{iv, 0}};
  long boxes = 0;
  while (!stack.empty()) {
    auto [box, depth] = stack.back();
    stack.pop_back();
    ++boxes;
    bool undefined = false;
    Interval val;
    try {
      val = f.eval_interval(box, bits);
    } catch (const UndefinedExprError&) {
      undefined = true;  // retry on the halves; division/sqrt may resolve
    }
    if (!undefined) {
      if (val.lo >= 0) continue;
      if (val.hi < 0) return violated("bisection", box, boxes);
    }
    if (depth >= max_depth) return inconclusive("bisection", box, boxes);
    Rat m = box.mid();
    stack.emplace_back(Interval{m, box.hi}, depth + 1);
    stack.emplace_back(Interval{box.lo, m}, depth + 1);
  }
  return proved("bisection", boxes);
}

}  // namespace prove_detail

// Certifies e(p) >= -margin for all p in iv. SUCCESS is sound by
// construction; FAILURE carries a witness box (Violated: the expression is
// truly negative there; Inconclusive: bisection depth was exhausted).
inline ProofReport prove_nonneg(const Expr& e, const Interval& iv,
                                const Rat& margin = Rat(0), int max_depth = 40,
                                unsigned bits = 128) {
  Expr f = margin == 0 ? e : e + Expr::constant(margin);
  try {
    auto nf = normalize(f, iv);
    if (nf) {
      ProofReport r = prove_detail::nf_nonneg(*nf, iv, max_depth, bits);
      if (r.status != ProofStatus::Inconclusive) return r;
    }
  } catch (const UndefinedExprError&) {
    // fall through to bisection, which reports per-box
  }
  return prove_detail::bisect_nonneg(f, iv, max_depth, bits);
}

}  // namespace triwise
