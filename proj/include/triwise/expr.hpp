#pragma once

// Expression trees in one parameter p: rational constants, p, +, -, *, /,
// integer powers and square roots. Two evaluation modes:
//   - eval_exact: exact rational value at a rational point, when one exists;
//   - eval_interval: a guaranteed rational-endpoint enclosure over a p-box.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "triwise/interval.hpp"
#include "triwise/rational.hpp"

namespace triwise {

class Expr {
 public:
  enum class Kind { Const, Param, Add, Sub, Mul, Div, Pow, Sqrt };

  Expr() : Expr(constant(Rat(0))) {}

  static Expr constant(Rat v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->value = std::move(v);
    return Expr(std::move(n));
  }
  static Expr param() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Param;
    return Expr(std::move(n));
  }
  static Expr binary(Kind k, Expr lhs, Expr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(lhs.node_);
    n->rhs = std::move(rhs.node_);
    return Expr(std::move(n));
  }
  static Expr pow(Expr base, long exp) {
    if (exp < 0) return constant(Rat(1)) / pow(std::move(base), -exp);
    auto n = std::make_shared<Node>();
    n->kind = Kind::Pow;
    n->lhs = std::move(base.node_);
    n->ipow = exp;
    return Expr(std::move(n));
  }
  static Expr sqrt(Expr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sqrt;
    n->lhs = std::move(arg.node_);
    return Expr(std::move(n));
  }

  Kind kind() const { return node_->kind; }
  const Rat& value() const { return node_->value; }
  Expr lhs() const { return Expr(node_->lhs); }
  Expr rhs() const { return Expr(node_->rhs); }
  long ipow() const { return node_->ipow; }

  friend Expr operator+(Expr a, Expr b) { return binary(Kind::Add, std::move(a), std::move(b)); }
  friend Expr operator-(Expr a, Expr b) { return binary(Kind::Sub, std::move(a), std::move(b)); }
  friend Expr operator*(Expr a, Expr b) { return binary(Kind::Mul, std::move(a), std::move(b)); }
  friend Expr operator/(Expr a, Expr b) { return binary(Kind::Div, std::move(a), std::move(b)); }
  friend Expr operator-(Expr a) { return constant(Rat(0)) - std::move(a); }

  // Enclosure of the expression value over a p-box. `bits` controls the
  // outward rounding of square roots; everything else is exact.
  Interval eval_interval(const Interval& p_box, unsigned bits = 128) const {
    switch (kind()) {
      case Kind::Const: return Interval(value());
      case Kind::Param: return p_box;
      case Kind::Add: return lhs().eval_interval(p_box, bits) + rhs().eval_interval(p_box, bits);
      case Kind::Sub: return lhs().eval_interval(p_box, bits) - rhs().eval_interval(p_box, bits);
      case Kind::Mul: return lhs().eval_interval(p_box, bits) * rhs().eval_interval(p_box, bits);
      case Kind::Div: return lhs().eval_interval(p_box, bits) / rhs().eval_interval(p_box, bits);
      case Kind::Pow: return pow_interval(lhs().eval_interval(p_box, bits), ipow());
      case Kind::Sqrt: return sqrt_interval(lhs().eval_interval(p_box, bits), bits);
    }
    throw std::logic_error("Expr: bad kind");
  }

  // Exact rational value at p, or nullopt if an irrational square root is
  // hit on the way.
  std::optional<Rat> eval_exact(const Rat& p) const {
    switch (kind()) {
      case Kind::Const: return value();
      case Kind::Param: return p;
      case Kind::Add: case Kind::Sub: case Kind::Mul: case Kind::Div: {
        auto a = lhs().eval_exact(p), b = rhs().eval_exact(p);
        if (!a || !b) return std::nullopt;
        switch (kind()) {
          case Kind::Add: return *a + *b;
          case Kind::Sub: return *a - *b;
          case Kind::Mul: return *a * *b;
          default:
            if (*b == 0) throw UndefinedExprError("Expr: division by zero");
            return *a / *b;
        }
      }
      case Kind::Pow: {
        auto a = lhs().eval_exact(p);
        if (!a) return std::nullopt;
        return pow_rat(*a, ipow());
      }
      case Kind::Sqrt: {
        auto a = lhs().eval_exact(p);
        if (!a) return std::nullopt;
        if (*a < 0) throw UndefinedExprError("Expr: sqrt of negative value");
        Int ns, ds;
        if (mpz_perfect_square_p(a->get_num_mpz_t()) &&
            mpz_perfect_square_p(a->get_den_mpz_t())) {
          mpz_sqrt(ns.get_mpz_t(), a->get_num_mpz_t());
          mpz_sqrt(ds.get_mpz_t(), a->get_den_mpz_t());
          return rat(ns, ds);
        }
        return std::nullopt;
      }
    }
    throw std::logic_error("Expr: bad kind");
  }

  std::string str() const {
    switch (kind()) {
      case Kind::Const: return rat_str(value());
      case Kind::Param: return "p";
      case Kind::Add: return "(" + lhs().str() + " + " + rhs().str() + ")";
      case Kind::Sub: return "(" + lhs().str() + " - " + rhs().str() + ")";
      case Kind::Mul: return "(" + lhs().str() + " * " + rhs().str() + ")";
      case Kind::Div: return "(" + lhs().str() + " / " + rhs().str() + ")";
      case Kind::Pow: return lhs().str() + "^" + std::to_string(ipow());
      case Kind::Sqrt: return "sqrt(" + lhs().str() + ")";
    }
    return "?";
  }

 private:
  struct Node {
    Kind kind = Kind::Const;
    Rat value;
    std::shared_ptr<const Node> lhs, rhs;
    long ipow = 0;
  };
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

inline Expr operator+(Expr a, const Rat& b) { return std::move(a) + Expr::constant(b); }
inline Expr operator+(const Rat& a, Expr b) { return Expr::constant(a) + std::move(b); }
inline Expr operator-(Expr a, const Rat& b) { return std::move(a) - Expr::constant(b); }
inline Expr operator-(const Rat& a, Expr b) { return Expr::constant(a) - std::move(b); }
inline Expr operator*(Expr a, const Rat& b) { return std::move(a) * Expr::constant(b); }
inline Expr operator*(const Rat& a, Expr b) { return Expr::constant(a) * std::move(b); }
inline Expr operator/(Expr a, const Rat& b) { return std::move(a) / Expr::constant(b); }
inline Expr operator/(const Rat& a, Expr b) { return Expr::constant(a) / std::move(b); }

}  // namespace triwise
