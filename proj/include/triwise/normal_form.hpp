#pragma once

// Normalization of parameter expressions into the canonical shape
//
//     (A(p) + B(p) * s) / D(p),   s = sqrt(R(p)),
//
// where A, B have coefficients in Q(sqrt(u), sqrt(v)) for constant
// square-free radicands u, v, while D and the radicand R stay rational.
// Expressions outside this fragment (two distinct parameter-dependent
// radicands, nested radicals, division by non-rational values) do not
// normalize; callers fall back to interval bisection.

#include <optional>
#include <utility>

#include "triwise/algk.hpp"
#include "triwise/expr.hpp"
#include "triwise/interval.hpp"
#include "triwise/poly.hpp"
#include "triwise/rational.hpp"

namespace triwise {

struct NormalForm {
  KContext ctx;
  KPoly A, B;
  Poly D = Poly::constant(Rat(1));
  Poly R;  // zero polynomial when no parameter radical occurs

  bool has_radical() const { return !B.is_zero(); }
  bool is_identically_zero() const { return A.is_zero() && B.is_zero(); }
};

namespace nf_detail {

// The basis element equal to sqrt(r) when r matches a context slot.
inline std::optional<AlgK> radical_basis(const KContext& ctx, const Int& r) {
  if (r == ctx.u) return AlgK{Rat(0), Rat(1), Rat(0), Rat(0)};
  if (r == ctx.v) return AlgK{Rat(0), Rat(0), Rat(1), Rat(0)};
  if (ctx.u != 0 && ctx.v != 0 && r == ctx.u * ctx.v)
    return AlgK{Rat(0), Rat(0), Rat(0), Rat(1)};
  return std::nullopt;
}

// Positive content of a rational polynomial: gcd of numerators over lcm of
// denominators.
inline Rat content(const Poly& f) {
  Int num_gcd(0), den_lcm(1);
  for (const Rat& k : f.coeffs()) {
    if (k == 0) continue;
    Int n = abs(k.get_num());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), k.get_den().get_mpz_t());
  }
  if (num_gcd == 0) return Rat(1);
  return rat(num_gcd, den_lcm);
}

// Exact sign of a rational polynomial on [a,b] assuming it has no root
// there; nullopt if it does have one (or is zero).
inline std::optional<int> constant_sign_on(const Poly& f, const Interval& iv) {
  if (f.is_zero()) return std::nullopt;
  if (f.degree() == 0) return f.coeff(0) > 0 ? 1 : -1;
  if (f.eval(iv.lo) == 0 || f.eval(iv.hi) == 0) return std::nullopt;
  if (!iv.is_point() && sturm_count_roots(f, iv) != 0) return std::nullopt;
  return f.eval(iv.lo) > 0 ? 1 : -1;
}

class Normalizer {
 public:
  explicit Normalizer(Interval domain) : domain_(std::move(domain)) {}

  std::optional<NormalForm> run(const Expr& e) {
    auto nf = visit(e);
    if (nf) nf->ctx = ctx_;
    return nf;
  }

 private:
  Interval domain_;
  KContext ctx_;
  Poly radicand_;  // shared parameter radicand, zero until first use

  KPoly kmul(const KPoly& a, const KPoly& b) { return mul(ctx_, a, b); }

  std::optional<NormalForm> visit(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind()) {
      case K::Const: {
        NormalForm nf;
        nf.A = KPoly(AlgK(e.value()));
        return nf;
      }
      case K::Param: {
        NormalForm nf;
        nf.A = KPoly::from_poly(Poly::x());
        return nf;
      }
      case K::Add: case K::Sub: {
        auto x = visit(e.lhs()), y = visit(e.rhs());
        if (!x || !y) return std::nullopt;
        NormalForm nf;
        KPoly dx = KPoly::from_poly(x->D), dy = KPoly::from_poly(y->D);
        KPoly ax = kmul(x->A, dy), ay = kmul(y->A, dx);
        KPoly bx = kmul(x->B, dy), by = kmul(y->B, dx);
        nf.A = e.kind() == K::Add ? add(ax, ay) : sub(ax, ay);
        nf.B = e.kind() == K::Add ? add(bx, by) : sub(bx, by);
        nf.D = x->D * y->D;
        nf.R = radicand_;
        return nf;
      }
      case K::Mul: {
        auto x = visit(e.lhs()), y = visit(e.rhs());
        if (!x || !y) return std::nullopt;
        return mul_nf(*x, *y);
      }
      case K::Div: {
        auto x = visit(e.lhs()), y = visit(e.rhs());
        if (!x || !y) return std::nullopt;
        auto inv = invert(*y);
        if (!inv) return std::nullopt;
        return mul_nf(*x, *inv);
      }
      case K::Pow: {
        auto x = visit(e.lhs());
        if (!x) return std::nullopt;
        NormalForm acc;
        acc.A = KPoly(AlgK(Rat(1)));
        for (long i = 0; i < e.ipow(); ++i) acc = mul_nf(acc, *x);
        return acc;
      }
      case K::Sqrt: {
        auto x = visit(e.lhs());
        if (!x) return std::nullopt;
        return sqrt_nf(*x);
      }
    }
    return std::nullopt;
  }

  NormalForm mul_nf(const NormalForm& x, const NormalForm& y) {
    NormalForm nf;
    nf.A = add(kmul(x.A, y.A),
               radicand_.is_zero() ? KPoly()
                                   : kmul(kmul(x.B, y.B), KPoly::from_poly(radicand_)));
    nf.B = add(kmul(x.A, y.B), kmul(x.B, y.A));
    nf.D = x.D * y.D;
    nf.R = radicand_;
    return nf;
  }

  std::optional<NormalForm> invert(const NormalForm& y) {
    NormalForm nf;
    if (y.B.is_zero()) {
      if (!y.A.is_rational()) return std::nullopt;  // would push K into D
      Poly a = y.A.to_poly();
      if (a.is_zero()) throw UndefinedExprError("normalize: division by zero expression");
      nf.A = KPoly::from_poly(y.D);
      nf.D = a;
    } else {
      if (!y.A.is_rational() || !y.B.is_rational()) return std::nullopt;
      Poly a = y.A.to_poly(), b = y.B.to_poly();
      Poly norm = a * a - b * b * radicand_;
      if (norm.is_zero()) return std::nullopt;  // radicand is a perfect square
      // 1 / ((a + b s)/d) = d (a - b s) / (a^2 - b^2 R)
      nf.A = KPoly::from_poly(y.D * a);
      nf.B = KPoly::from_poly(-(y.D * b));
      nf.D = norm;
    }
    nf.R = radicand_;
    return nf;
  }

  std::optional<NormalForm> sqrt_nf(const NormalForm& x) {
    if (!x.B.is_zero() || !x.A.is_rational()) return std::nullopt;  // nested radical
    Poly a = x.A.to_poly();
    if (a.is_zero()) return NormalForm{};  // sqrt(0)
    auto dsign = constant_sign_on(x.D, domain_);
    if (!dsign) return std::nullopt;
    // sqrt(a/d) = sqrt(a*d) / (sign(d) * d)
    Poly X = a * x.D;
    Rat c = content(X);
    Poly Xhat = X * (Rat(1) / c);  // integer coefficients, content 1
    auto [sq, sf] = squarefree_split(c.get_num() * c.get_den());
    Rat mult = rat(sq, c.get_den());  // sqrt(c) = mult * sqrt(sf)
    Poly den = x.D * Rat(*dsign);
    if (Xhat.degree() == 0) {
      // Constant radicand: lands in the coefficient field.
      if (Xhat.coeff(0) < 0) throw UndefinedExprError("normalize: sqrt of negative constant");
      Int k = sf;  // Xhat == 1 by content extraction
      NormalForm nf;
      if (k == 1) {
        nf.A = KPoly(AlgK(mult));
      } else {
        if (!ctx_.admit(k)) return std::nullopt;
        auto basis = radical_basis(ctx_, k);
        if (!basis) return std::nullopt;
        nf.A = KPoly(scale(*basis, mult));
      }
      nf.D = den;
      nf.R = radicand_;
      return nf;
    }
    // Parameter-dependent radicand: sqrt(c * Xhat) = mult * sqrt(sf * Xhat).
    Poly cand = Xhat * Rat(sf);
    if (radicand_.is_zero()) {
      radicand_ = cand;
    } else if (!(radicand_ == cand)) {
      return std::nullopt;  // second distinct parameter radical
    }
    NormalForm nf;
    nf.B = KPoly(AlgK(mult));
    nf.D = den;
    nf.R = radicand_;
    return nf;
  }
};

}  // namespace nf_detail

// Normalizes e over the given p-interval (the interval only matters for
// fixing signs of denominators under square roots).
inline std::optional<NormalForm> normalize(const Expr& e, const Interval& domain) {
  return nf_detail::Normalizer(domain).run(e);
}

}  // namespace triwise
