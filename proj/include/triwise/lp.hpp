#pragma once

// Parametric linear programs and their dual certificates.
//
// A ParamLP is  max c(p)^T x  s.t.  A(p) x <= b(p), x >= 0  with expression
// entries. A DualCertificate supplies an explicit dual vector y(p), a
// p-interval and a target bound; check_certificate re-proves, rigorously on
// the whole interval, that (1) y >= 0, (2) A^T y >= c column-wise, and
// (3) b^T y <= target. By weak duality every primal-feasible x then has
// c^T x <= target on the interval.
//
// An exact rational two-phase simplex (Bland's rule) cross-checks the
// certificates at sample points.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "triwise/bounds.hpp"
#include "triwise/expr.hpp"
#include "triwise/prove.hpp"
#include "triwise/rational.hpp"

namespace triwise {

// --- exact simplex -----------------------------------------------------------

struct SimplexResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Optimal;
  Rat value;
  std::vector<Rat> x;
};

namespace lp_detail {

// Dense tableau with explicit basis; reduced costs recomputed per pivot
// (problem sizes here are tiny). Bland's rule prevents cycling.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rat>> rows, std::vector<Rat> rhs, std::vector<int> basis)
      : rows_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)) {}

  size_t nrows() const { return rows_.size(); }
  size_t ncols() const { return rows_.empty() ? 0 : rows_[0].size(); }
  const std::vector<int>& basis() const { return basis_; }
  const Rat& rhs(size_t i) const { return rhs_[i]; }
  const Rat& at(size_t i, size_t j) const { return rows_[i][j]; }

  Rat objective_value(const std::vector<Rat>& cost) const {
    Rat v(0);
    for (size_t i = 0; i < nrows(); ++i) v += cost[basis_[i]] * rhs_[i];
    return v;
  }

  std::vector<Rat> reduced_costs(const std::vector<Rat>& cost) const {
    std::vector<Rat> z(ncols(), Rat(0));
    for (size_t j = 0; j < ncols(); ++j) {
      Rat zj(0);
      for (size_t i = 0; i < nrows(); ++i) zj += cost[basis_[i]] * rows_[i][j];
      z[j] = zj - cost[j];
    }
    return z;
  }

  void pivot(size_t row, size_t col) {
    Rat inv = Rat(1) / rows_[row][col];
    for (auto& v : rows_[row]) v *= inv;
    rhs_[row] *= inv;
    for (size_t i = 0; i < nrows(); ++i) {
      if (i == row || rows_[i][col] == 0) continue;
      Rat factor = rows_[i][col];
      for (size_t j = 0; j < ncols(); ++j) rows_[i][j] -= factor * rows_[row][j];
      rhs_[i] -= factor * rhs_[row];
    }
    basis_[row] = static_cast<int>(col);
  }

  // Primal simplex for maximization over the allowed columns.
  // Returns false when unbounded.
  bool optimize(const std::vector<Rat>& cost, const std::vector<bool>& allowed) {
    while (true) {
      auto z = reduced_costs(cost);
      std::optional<size_t> enter;
      for (size_t j = 0; j < ncols(); ++j)
        if (allowed[j] && z[j] < 0) { enter = j; break; }  // Bland: lowest index
      if (!enter) return true;
      std::optional<size_t> leave;
      Rat best_ratio(0);
      for (size_t i = 0; i < nrows(); ++i) {
        if (rows_[i][*enter] <= 0) continue;
        Rat ratio = rhs_[i] / rows_[i][*enter];
        if (!leave || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[*leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (!leave) return false;  // unbounded direction
      pivot(*leave, *enter);
    }
  }

  void drop_row(size_t row) {
    rows_.erase(rows_.begin() + row);
    rhs_.erase(rhs_.begin() + row);
    basis_.erase(basis_.begin() + row);
  }

 private:
  std::vector<std::vector<Rat>> rows_;
  std::vector<Rat> rhs_;
  std::vector<int> basis_;
};

}  // namespace lp_detail

// max c^T x s.t. A x <= b, x >= 0, everything rational, exact arithmetic.
inline SimplexResult simplex_max(const std::vector<std::vector<Rat>>& A,
                                 const std::vector<Rat>& b, const std::vector<Rat>& c) {
  size_t m = A.size(), n = c.size();
  for (const auto& row : A)
    if (row.size() != n) throw std::invalid_argument("simplex_max: ragged matrix");
  if (b.size() != m) throw std::invalid_argument("simplex_max: rhs size mismatch");

  // columns: n structural, m slacks, then one artificial per negative-rhs row
  std::vector<size_t> artificial_rows;
  for (size_t i = 0; i < m; ++i)
    if (b[i] < 0) artificial_rows.push_back(i);
  size_t n_art = artificial_rows.size();
  size_t total = n + m + n_art;

  std::vector<std::vector<Rat>> rows(m, std::vector<Rat>(total, Rat(0)));
  std::vector<Rat> rhs = b;
  std::vector<int> basis(m);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) rows[i][j] = A[i][j];
    rows[i][n + i] = Rat(1);
    basis[i] = static_cast<int>(n + i);
  }
  for (size_t k = 0; k < n_art; ++k) {
    size_t i = artificial_rows[k];
    for (auto& v : rows[i]) v = -v;
    rhs[i] = -rhs[i];
    rows[i][n + m + k] = Rat(1);
    basis[i] = static_cast<int>(n + m + k);
  }

  lp_detail::Tableau tab(std::move(rows), std::move(rhs), std::move(basis));
  std::vector<bool> allowed(total, true);

  if (n_art > 0) {
    std::vector<Rat> phase1(total, Rat(0));
    for (size_t k = 0; k < n_art; ++k) phase1[n + m + k] = Rat(-1);
    if (!tab.optimize(phase1, allowed))
      throw std::logic_error("simplex_max: phase 1 unbounded");
    if (tab.objective_value(phase1) < 0) return {SimplexResult::Status::Infeasible, Rat(0), {}};
    // remove artificials from the basis (pivot out, or drop redundant rows)
    for (size_t i = tab.nrows(); i-- > 0;) {
      if (tab.basis()[i] < static_cast<int>(n + m)) continue;
      bool pivoted = false;
      for (size_t j = 0; j < n + m && !pivoted; ++j)
        if (tab.at(i, j) != 0) {
          tab.pivot(i, j);
          pivoted = true;
        }
      if (!pivoted) tab.drop_row(i);
    }
    for (size_t k = 0; k < n_art; ++k) allowed[n + m + k] = false;
  }

  std::vector<Rat> cost(total, Rat(0));
  for (size_t j = 0; j < n; ++j) cost[j] = c[j];
  if (!tab.optimize(cost, allowed)) return {SimplexResult::Status::Unbounded, Rat(0), {}};

  std::vector<Rat> x(n, Rat(0));
  for (size_t i = 0; i < tab.nrows(); ++i)
    if (tab.basis()[i] < static_cast<int>(n)) x[tab.basis()[i]] = tab.rhs(i);
  return {SimplexResult::Status::Optimal, tab.objective_value(cost), x};
}

// --- parametric LPs -----------------------------------------------------------

struct ParamRow {
  std::string label;          // the paper's dual-variable name, e.g. "y3"
  std::vector<Expr> coeffs;   // dense, one per variable
  Expr rhs;
};

struct ParamLP {
  std::vector<std::string> var_names;
  std::vector<Expr> objective;
  std::vector<ParamRow> rows;
};

struct InstantiatedLP {
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;
  std::vector<Rat> c;
  bool exact = true;  // false when algebraic entries were replaced by enclosures
};

// Instantiates at a rational p. Algebraic entries are replaced by upper
// enclosure endpoints, which keeps every transcribed dual vector feasible
// (all certificate duals are non-negative) while weakly enlarging b; the
// weak-duality comparison against the matching upper bound stays valid.
inline InstantiatedLP instantiate(const ParamLP& lp, const Rat& p, unsigned bits = 192) {
  InstantiatedLP out;
  auto value_or_upper = [&](const Expr& e) -> Rat {
    if (auto v = e.eval_exact(p)) return *v;
    out.exact = false;
    return e.eval_interval(Interval(p), bits).hi;
  };
  for (const ParamRow& row : lp.rows) {
    std::vector<Rat> arow;
    for (const Expr& e : row.coeffs) arow.push_back(value_or_upper(e));
    out.A.push_back(std::move(arow));
    out.b.push_back(value_or_upper(row.rhs));
  }
  for (const Expr& e : lp.objective) out.c.push_back(value_or_upper(e));
  return out;
}

// --- dual certificates ---------------------------------------------------------

struct DualCertificate {
  std::string case_id;
  std::string description;
  ParamLP lp;
  std::vector<Expr> dual;  // one entry per row, aligned with lp.rows
  Interval p_interval;
  Expr target;
};

inline Expr dual_objective(const DualCertificate& cert) {
  Expr total = Expr::constant(Rat(0));
  for (size_t i = 0; i < cert.lp.rows.size(); ++i)
    total = total + cert.lp.rows[i].rhs * cert.dual[i];
  return total;
}

struct CheckEntry {
  std::string kind;  // dual_nonneg | dual_feasible_col | objective_le_target
  std::string subject;
  ProofReport proof;
};

struct CertificateReport {
  std::string case_id;
  Interval interval{Rat(0), Rat(0)};
  std::vector<CheckEntry> entries;
  bool objective_identity = false;  // target - objective normalized to exactly 0
  bool passed = false;
};

struct CheckOptions {
  int max_depth = 40;
  unsigned bits = 192;
};

inline CertificateReport check_certificate(const DualCertificate& cert,
                                           const CheckOptions& opts = {}) {
  CertificateReport report;
  report.case_id = cert.case_id;
  report.interval = cert.p_interval;
  bool all_ok = true;

  for (size_t i = 0; i < cert.dual.size(); ++i) {
    ProofReport pr = prove_nonneg(cert.dual[i], cert.p_interval, Rat(0), opts.max_depth, opts.bits);
    all_ok = all_ok && pr.ok();
    report.entries.push_back({"dual_nonneg", cert.lp.rows[i].label, pr});
  }

  for (size_t j = 0; j < cert.lp.var_names.size(); ++j) {
    Expr lhs = Expr::constant(Rat(0));
    for (size_t i = 0; i < cert.lp.rows.size(); ++i)
      lhs = lhs + cert.lp.rows[i].coeffs[j] * cert.dual[i];
    ProofReport pr = prove_nonneg(lhs - cert.lp.objective[j], cert.p_interval, Rat(0),
                                  opts.max_depth, opts.bits);
    all_ok = all_ok && pr.ok();
    report.entries.push_back({"dual_feasible_col", cert.lp.var_names[j], pr});
  }

  Expr slack = cert.target - dual_objective(cert);
  try {
    if (auto nf = normalize(slack, cert.p_interval))
      report.objective_identity = nf->is_identically_zero();
  } catch (const UndefinedExprError&) {
  }
  ProofReport pr = prove_nonneg(slack, cert.p_interval, Rat(0), opts.max_depth, opts.bits);
  all_ok = all_ok && pr.ok();
  report.entries.push_back({"objective_le_target", "b^T y <= target", pr});

  report.passed = all_ok;
  return report;
}

// Perturbs one dual value downward; used as a soundness canary (every such
// mutation must break at least one check).
inline DualCertificate perturb_dual(const DualCertificate& cert, size_t index,
                                    const Rat& delta = rat(-1, 10)) {
  DualCertificate out = cert;
  out.case_id = cert.case_id + "-perturbed-y" + out.lp.rows[index].label;
  out.dual[index] = out.dual[index] + Expr::constant(delta);
  return out;
}

// --- the builtin certificates ---------------------------------------------------

namespace cert_detail {

inline Expr P() { return Expr::param(); }
inline Expr Q() { return Expr::constant(Rat(1)) - Expr::param(); }
inline Expr K(Rat v) { return Expr::constant(std::move(v)); }
inline Expr K(long num, long den = 1) { return Expr::constant(rat(num, den)); }

inline Expr bd3_measure() {
  // 4 p^3 q + p^4
  return K(4) * Expr::pow(P(), 3) * Q() + Expr::pow(P(), 4);
}

inline Expr three_p_minus_eps() {
  // 3p - (2-3p)(3p-1)
  return K(3) * P() - (K(2) - K(3) * P()) * (K(3) * P() - K(1));
}

inline ParamRow row(std::string label, std::vector<Expr> coeffs, Expr rhs) {
  return {std::move(label), std::move(coeffs), std::move(rhs)};
}

// Sparse helper: coefficients given as (index, value) over `nvars` columns.
inline std::vector<Expr> sparse(size_t nvars, std::vector<std::pair<size_t, Expr>> entries) {
  std::vector<Expr> v(nvars, Expr::constant(Rat(0)));
  for (auto& [j, e] : entries) v[j] = std::move(e);
  return v;
}

}  // namespace cert_detail

// The three cross-intersecting-sum certificates of the 3p - eps_p bound.
// Case split on which of the B_i are empty; all data rational.
inline DualCertificate certificate_C4_1() {
  using namespace cert_detail;
  ParamLP lp;
  lp.var_names = {"a1", "a2", "a3", "b1"};
  lp.objective = {P(), P(), P(), Q()};
  size_t n = 4;
  lp.rows = {
      row("y1", sparse(n, {{1, K(1)}, {2, K(1)}, {3, K(1)}}), K(3) * P()),
      row("y2", sparse(n, {{1, K(1)}, {3, K(1)}}), K(1)),
      row("y3", sparse(n, {{2, K(1)}, {3, K(1)}}), K(1)),
      row("y4", sparse(n, {{0, K(1)}}), K(1)),
      row("y5", sparse(n, {{1, K(1)}}), K(1)),
      row("y6", sparse(n, {{2, K(1)}}), K(1)),
      row("y7", sparse(n, {{3, K(1)}}), K(1)),
  };
  DualCertificate cert;
  cert.case_id = "C4-1";
  cert.description = "cross-sum bound, case B2 = B3 = empty";
  cert.lp = std::move(lp);
  cert.dual = {K(3) * P() - K(1), K(1) - K(2) * P(), K(1) - K(2) * P(), P(),
               K(0),             K(0),             K(0)};
  cert.p_interval = {rat(1, 3), rat(1, 2)};
  cert.target = three_p_minus_eps();
  return cert;
}

inline DualCertificate certificate_C4_2() {
  using namespace cert_detail;
  ParamLP lp;
  lp.var_names = {"a1", "a2", "a3", "b1", "b2"};
  lp.objective = {P(), P(), P(), Q(), Q()};
  size_t n = 5;
  lp.rows = {
      row("y1", sparse(n, {{1, K(1)}, {2, K(1)}, {3, K(1)}}), K(3) * P()),
      row("y2", sparse(n, {{0, K(1)}, {2, K(1)}, {4, K(1)}}), K(3) * P()),
      row("y3", sparse(n, {{2, K(1)}, {3, K(1)}, {4, K(1)}}), K(1)),
      row("y4", sparse(n, {{1, K(1)}, {3, K(1)}}), K(1)),
      row("y5", sparse(n, {{0, K(1)}, {4, K(1)}}), K(1)),
      row("y6", sparse(n, {{0, K(1)}}), K(1)),
      row("y7", sparse(n, {{1, K(1)}}), K(1)),
      row("y8", sparse(n, {{2, K(1)}}), K(1)),
      row("y9", sparse(n, {{3, K(1)}}), K(1)),
      row("y10", sparse(n, {{4, K(1)}}), K(1)),
  };
  DualCertificate cert;
  cert.case_id = "C4-2";
  cert.description = "cross-sum bound, case B2 nonempty, B3 empty";
  cert.lp = std::move(lp);
  cert.dual = {K(0), K(3) * P() - K(1), K(1) - K(2) * P(), P(), K(1) - K(2) * P(),
               K(0), K(0), K(0), K(0), K(0)};
  cert.p_interval = {rat(1, 3), rat(1, 2)};
  cert.target = three_p_minus_eps();
  return cert;
}

inline DualCertificate certificate_C4_3() {
  using namespace cert_detail;
  ParamLP lp;
  lp.var_names = {"a1", "a2", "a3", "b1", "b2", "b3"};
  lp.objective = {P(), P(), P(), Q(), Q(), Q()};
  size_t n = 6;
  lp.rows = {
      row("y1", sparse(n, {{1, K(1)}, {2, K(1)}, {3, K(1)}}), K(3) * P()),
      row("y2", sparse(n, {{0, K(1)}, {2, K(1)}, {4, K(1)}}), K(3) * P()),
      row("y3", sparse(n, {{0, K(1)}, {1, K(1)}, {5, K(1)}}), K(3) * P()),
      row("y4", sparse(n, {{0, K(1)}, {4, K(1)}, {5, K(1)}}), K(1)),
      row("y5", sparse(n, {{1, K(1)}, {3, K(1)}, {5, K(1)}}), K(1)),
      row("y6", sparse(n, {{2, K(1)}, {3, K(1)}, {4, K(1)}}), K(1)),
      row("y7", sparse(n, {{0, K(1)}}), K(1)),
      row("y8", sparse(n, {{1, K(1)}}), K(1)),
      row("y9", sparse(n, {{2, K(1)}}), K(1)),
      row("y10", sparse(n, {{3, K(1)}}), K(1)),
      row("y11", sparse(n, {{4, K(1)}}), K(1)),
      row("y12", sparse(n, {{5, K(1)}}), K(1)),
  };
  DualCertificate cert;
  cert.case_id = "C4-3";
  cert.description = "cross-sum bound, case B2 and B3 nonempty";
  cert.lp = std::move(lp);
  cert.dual = {K(3) * P() - K(1), K(0), K(0), P(), K(1) - K(2) * P(), K(1) - K(2) * P(),
               K(0), K(0), K(0), K(0), K(0), K(0)};
  cert.p_interval = {rat(1, 3), rat(1, 2)};
  cert.target = three_p_minus_eps();
  return cert;
}

// Certificates for the main stability bound; x_I variables are measures of
// the trace families G_I. Margins per case follow each case's concluding
// bound.
inline DualCertificate certificate_C5_2() {
  using namespace cert_detail;
  Expr c = c_expr(), alpha3 = Expr::pow(tilde_alpha_expr(), 3);
  Expr pq2 = P() * Expr::pow(Q(), 2), p2q = Expr::pow(P(), 2) * Q(), p3 = Expr::pow(P(), 3);
  ParamLP lp;
  lp.var_names = {"x1", "x23", "x13", "x12", "x123"};
  lp.objective = {pq2, p2q, p2q, p2q, p3};
  size_t n = 5;
  lp.rows = {
      row("y0", sparse(n, {{0, K(1)}, {1, K(-1)}}), K(0)),
      row("y1", sparse(n, {{0, K(1)}}), alpha3),
      row("y2", sparse(n, {{2, c}, {3, K(1)}}), P() * (c + K(1))),
      row("y3", sparse(n, {{0, K(1)}, {4, K(1)}}), K(1)),
      row("y4", sparse(n, {{1, K(1)}, {4, K(1)}}), K(1)),
      row("y5", sparse(n, {{0, K(1)}, {1, K(1)}, {3, K(1)}}), K(1)),
      row("y6", sparse(n, {{1, K(1)}}), tilde_a_expr(2)),
  };
  DualCertificate cert;
  cert.case_id = "C5-2";
  cert.description = "case G1 nonempty, G2 empty, subcase x1 <= x23";
  cert.lp = std::move(lp);
  cert.dual = {K(0),
               pq2 - p2q * (K(1) - K(2) / c) - p3,
               p2q / c,
               p3 - p2q / c,
               p2q / c,
               p2q * (K(1) - K(1) / c),
               K(0)};
  cert.p_interval = {rat(2, 5), rat(1, 2)};
  cert.target = bd3_measure() - K(19, 10000);
  return cert;
}

// The printed dual for this case sets y1 = y2 = p^2 q (1 - 1/c), which is
// infeasible for p > 2/5 (columns x23, x13, x12 then fall short of their
// objective coefficients). Replacing 1 - 1/c by 1/c in y1, y2 makes all
// five columns exactly tight and keeps the objective below the target; the
// two expressions coincide at p = 2/5 where c = 2.
inline DualCertificate certificate_C5_3() {
  using namespace cert_detail;
  Expr c = c_expr(), alpha3 = Expr::pow(tilde_alpha_expr(), 3);
  Expr pq2 = P() * Expr::pow(Q(), 2), p2q = Expr::pow(P(), 2) * Q(), p3 = Expr::pow(P(), 3);
  ParamLP lp;
  lp.var_names = {"x1", "x23", "x13", "x12", "x123"};
  lp.objective = {pq2, p2q, p2q, p2q, p3};
  size_t n = 5;
  lp.rows = {
      row("y0", sparse(n, {{0, K(-1)}, {1, K(1)}}), K(0)),
      row("y1", sparse(n, {{1, K(1)}}), alpha3),
      row("y2", sparse(n, {{2, c}, {3, K(1)}}), P() * (c + K(1))),
      row("y3", sparse(n, {{0, K(1)}, {4, K(1)}}), K(1)),
      row("y4", sparse(n, {{1, K(1)}, {4, K(1)}}), K(1)),
      row("y5", sparse(n, {{0, K(1)}, {1, K(1)}, {3, K(1)}}), K(1)),
      row("y7", sparse(n, {{0, K(1)}}), tilde_a_expr(3)),
  };
  DualCertificate cert;
  cert.case_id = "C5-3";
  cert.description = "case G1 nonempty, G2 empty, subcase x23 <= x1";
  cert.lp = std::move(lp);
  cert.dual = {K(0),
               p2q / c,
               p2q / c,
               p3,
               K(0),
               p2q * (K(1) - K(1) / c),
               pq2 - p2q * (K(1) - K(1) / c) - p3};
  cert.p_interval = {rat(2, 5), rat(1, 2)};
  cert.target = bd3_measure() - K(9, 5000);
  return cert;
}

inline DualCertificate certificate_C5_4() {
  using namespace cert_detail;
  Expr alpha4 = Expr::pow(tilde_alpha_expr(), 4);
  Expr pq2 = P() * Expr::pow(Q(), 2), p2q = Expr::pow(P(), 2) * Q(), p3 = Expr::pow(P(), 3);
  ParamLP lp;
  lp.var_names = {"x2", "x1", "x23", "x13", "x12", "x123"};
  lp.objective = {pq2, pq2, p2q, p2q, p2q, p3};
  size_t n = 6;
  lp.rows = {
      row("y1", sparse(n, {{1, K(1)}}), tilde_a_expr(4)),
      row("y2", sparse(n, {{3, K(1)}}), tilde_a_expr(2)),
      row("y3", sparse(n, {{0, K(1)}}), alpha4),
      row("y4", sparse(n, {{3, K(1)}, {5, K(1)}}), K(1)),
      row("y5", sparse(n, {{1, K(1)}, {2, K(1)}, {4, K(1)}}), K(1)),
      row("y6", sparse(n, {{0, K(1)}, {3, K(1)}, {4, K(1)}}), K(1)),
      row("y7", sparse(n, {{0, K(1)}, {1, K(1)}, {5, K(1)}}), K(1)),
  };
  DualCertificate cert;
  cert.case_id = "C5-4";
  cert.description = "case G2 nonempty, G3 empty";
  cert.lp = std::move(lp);
  cert.dual = {P() * Q() * (K(1) - K(2) * P()),
               Expr::pow(P(), 2) * (K(1) - K(2) * P()),
               pq2,
               p3,
               p2q,
               K(0),
               K(0)};
  cert.p_interval = {rat(2, 5), rat(1, 2)};
  cert.target = bd3_measure() - K(1, 250);
  return cert;
}

namespace cert_detail {

inline ParamLP lp_case_G3() {
  // shared between the two subcase certificates of case G3 nonempty
  ParamLP lp;
  Expr pq2 = P() * Expr::pow(Q(), 2), p2q = Expr::pow(P(), 2) * Q(), p3 = Expr::pow(P(), 3);
  lp.var_names = {"x3", "x2", "x1", "x23", "x13", "x12", "x123"};
  lp.objective = {pq2, pq2, pq2, p2q, p2q, p2q, p3};
  size_t n = 7;
  lp.rows = {
      row("y1", sparse(n, {{2, K(1)}}), tilde_a_expr(4)),
      row("y2", sparse(n, {{5, K(1)}}), tilde_a_expr(2)),
      row("y3", sparse(n, {{1, K(1)}}), Expr::pow(tilde_alpha_expr(), 4)),
      row("y4", sparse(n, {{5, K(1)}, {6, K(1)}}), K(1)),
      row("y5", sparse(n, {{2, K(1)}, {3, K(1)}, {5, K(1)}}), K(1)),
      row("y6", sparse(n, {{1, K(1)}, {4, K(1)}, {5, K(1)}}), K(1)),
      row("y7", sparse(n, {{1, K(1)}, {2, K(1)}, {6, K(1)}}), K(1)),
      row("y8", sparse(n, {{0, K(1)}, {1, K(-1)}}), K(0)),
      row("y9", sparse(n, {{3, K(1)}, {4, K(-1)}}), K(0)),
      row("y10", sparse(n, {{4, K(1)}, {5, K(-1)}}), K(0)),
  };
  return lp;
}

inline ParamLP lp_case_G0() {
  ParamLP lp;
  Expr pq2 = P() * Expr::pow(Q(), 2), p2q = Expr::pow(P(), 2) * Q(), p3 = Expr::pow(P(), 3);
  lp.var_names = {"x0", "x3", "x2", "x1", "x23", "x13", "x12", "x123"};
  lp.objective = {Expr::pow(Q(), 3), pq2, pq2, pq2, p2q, p2q, p2q, p3};
  size_t n = 8;
  lp.rows = {
      row("y1", sparse(n, {{0, K(1)}}), Expr::pow(tilde_alpha_expr(), 7)),
      row("y2", sparse(n, {{2, K(1)}}), Expr::pow(tilde_alpha_expr(), 4)),
      row("y3", sparse(n, {{3, K(1)}}), tilde_a_expr(5)),
      row("y4", sparse(n, {{7, K(1)}}), P()),
      row("y5", sparse(n, {{3, K(1)}, {4, K(1)}, {6, K(1)}}), K(1)),
      row("y6", sparse(n, {{1, K(1)}, {2, K(-1)}}), K(0)),
      row("y7", sparse(n, {{4, K(1)}, {5, K(-1)}}), K(0)),
      row("y8", sparse(n, {{5, K(1)}, {6, K(-1)}}), K(0)),
      row("y9", sparse(n, {{6, K(1)}, {7, K(-1)}}), K(0)),
  };
  return lp;
}

}  // namespace cert_detail

inline DualCertificate certificate_C5_5a() {
  using namespace cert_detail;
  Expr pq2 = P() * Expr::pow(Q(), 2), p2q = Expr::pow(P(), 2) * Q(), p3 = Expr::pow(P(), 3);
  DualCertificate cert;
  cert.case_id = "C5-5a";
  cert.description = "case G3 nonempty, G_empty empty, subcase p <= 0.453264";
  cert.lp = lp_case_G3();
  cert.dual = {pq2,
               Expr::pow(P(), 2) * (K(3) - K(4) * P()),
               K(2) * pq2,
               p3,
               K(0),
               K(0),
               K(0),
               pq2,
               p2q,
               K(2) * p2q};
  cert.p_interval = {rat(2, 5), parse_rat("0.453264")};
  cert.target = bd3_measure() - K(1, 250);
  return cert;
}

inline DualCertificate certificate_C5_5b() {
  using namespace cert_detail;
  Expr pq2 = P() * Expr::pow(Q(), 2), p2q = Expr::pow(P(), 2) * Q();
  DualCertificate cert;
  cert.case_id = "C5-5b";
  cert.description = "case G3 nonempty, G_empty empty, subcase p >= 0.453264";
  cert.lp = lp_case_G3();
  cert.dual = {K(0),
               P() * (K(1) - K(2) * P()),
               P() * Q(),
               P() * (K(3) * P() - Expr::pow(P(), 2) - K(1)),
               p2q,
               K(0),
               P() * Q() * (K(1) - K(2) * P()),
               pq2,
               K(0),
               p2q};
  cert.p_interval = {parse_rat("0.453264"), rat(1, 2)};
  cert.target = bd3_measure() - K(1, 250);
  return cert;
}

inline DualCertificate certificate_C5_6a() {
  using namespace cert_detail;
  Expr pq2 = P() * Expr::pow(Q(), 2), p2q = Expr::pow(P(), 2) * Q();
  DualCertificate cert;
  cert.case_id = "C5-6a";
  cert.description = "case G_empty nonempty, subcase p <= 0.424803";
  cert.lp = lp_case_G0();
  cert.dual = {Expr::pow(Q(), 3),
               K(2) * pq2,
               pq2,
               Expr::pow(P(), 2) * (K(3) - K(2) * P()),
               K(0),
               pq2,
               p2q,
               K(2) * p2q,
               K(3) * p2q};
  cert.p_interval = {rat(2, 5), parse_rat("0.424803")};
  cert.target = bd3_measure() - K(1, 250);
  return cert;
}

inline DualCertificate certificate_C5_6b() {
  using namespace cert_detail;
  Expr pq2 = P() * Expr::pow(Q(), 2), p2q = Expr::pow(P(), 2) * Q();
  DualCertificate cert;
  cert.case_id = "C5-6b";
  cert.description = "case G_empty nonempty, subcase p >= 0.424803";
  cert.lp = lp_case_G0();
  cert.dual = {Expr::pow(Q(), 3),
               K(2) * pq2,
               P() * Q() * (K(1) - K(2) * P()),
               Expr::pow(P(), 2),
               p2q,
               pq2,
               K(0),
               p2q,
               p2q};
  cert.p_interval = {parse_rat("0.424803"), rat(1, 2)};
  cert.target = bd3_measure() - K(1, 250);
  return cert;
}

inline std::vector<DualCertificate> builtin_certificates() {
  return {certificate_C4_1(), certificate_C4_2(), certificate_C4_3(),
          certificate_C5_2(), certificate_C5_3(), certificate_C5_4(),
          certificate_C5_5a(), certificate_C5_5b(), certificate_C5_6a(),
          certificate_C5_6b()};
}

inline std::optional<DualCertificate> find_certificate(const std::string& case_id) {
  for (auto& cert : builtin_certificates())
    if (cert.case_id == case_id) return cert;
  return std::nullopt;
}

// --- the arithmetic case G1 = empty ------------------------------------------

// Bound p^2 q (3p - 0.16) + p^3 for the case G1 = empty, together with the
// margin check against 4 p^3 q + p^4 - 0.01.
inline Rat case_bound_G1_empty(const Rat& p) {
  if (p < rat(2, 5) || p > rat(1, 2))
    throw std::domain_error("case_bound_G1_empty: p outside [2/5,1/2]");
  Rat q = 1 - p;
  return p * p * q * (3 * p - rat(4, 25)) + pow_rat(p, 3);
}

inline Expr case_bound_G1_empty_expr(const Rat& margin = rat(4, 25)) {
  using namespace cert_detail;
  return Expr::pow(P(), 2) * Q() * (K(3) * P() - Expr::constant(margin)) + Expr::pow(P(), 3);
}

// The per-case bounds used by the aggregation of the main theorem: each
// entry is an upper bound for mu_p(F) valid in its case on [2/5,1/2]
// (subcase certificates stay below their targets on their subintervals, and
// the targets themselves are case-wide).
struct CaseBound {
  std::string label;
  Expr bound;
  Interval interval;
};

inline std::vector<CaseBound> main_theorem_case_bounds() {
  using namespace cert_detail;
  std::vector<CaseBound> out;
  out.push_back({"G1-empty", case_bound_G1_empty_expr(), {rat(2, 5), rat(1, 2)}});
  for (auto& cert : builtin_certificates())
    if (cert.case_id.rfind("C5", 0) == 0)
      out.push_back({cert.case_id, dual_objective(cert), cert.p_interval});
  return out;
}

// --- claim row sets -----------------------------------------------------------

struct ClaimRow {
  std::string label;
  std::vector<std::pair<std::string, Expr>> terms;  // (variable, coefficient)
  Expr rhs;
};

// The constraint rows exactly as the claims state them. Claim g1eqn item (1)
// bounds min(x1, x23); the subcase LPs instantiate it for the smaller one.
inline std::vector<ClaimRow> claim_rows(const std::string& claim_id) {
  using namespace cert_detail;
  auto t = [](std::initializer_list<std::pair<std::string, Expr>> xs) {
    return std::vector<std::pair<std::string, Expr>>(xs);
  };
  if (claim_id == "b2=b3=0")
    return {{"1", t({{"b1", K(1)}, {"a2", K(1)}, {"a3", K(1)}}), K(3) * P()},
            {"2", t({{"b1", K(1)}, {"a2", K(1)}}), K(1)},
            {"3", t({{"b1", K(1)}, {"a3", K(1)}}), K(1)}};
  if (claim_id == "b2!=0,b3=0")
    return {{"1", t({{"b1", K(1)}, {"a2", K(1)}, {"a3", K(1)}}), K(3) * P()},
            {"2", t({{"a1", K(1)}, {"b2", K(1)}, {"a3", K(1)}}), K(3) * P()},
            {"3", t({{"b1", K(1)}, {"b2", K(1)}, {"a3", K(1)}}), K(1)},
            {"4", t({{"b1", K(1)}, {"a2", K(1)}}), K(1)},
            {"5", t({{"a1", K(1)}, {"b2", K(1)}}), K(1)}};
  if (claim_id == "b3!=0")
    return {{"1", t({{"b1", K(1)}, {"a2", K(1)}, {"a3", K(1)}}), K(3) * P()},
            {"2", t({{"a1", K(1)}, {"b2", K(1)}, {"a3", K(1)}}), K(3) * P()},
            {"3", t({{"a1", K(1)}, {"a2", K(1)}, {"b3", K(1)}}), K(3) * P()},
            {"4", t({{"a1", K(1)}, {"b2", K(1)}, {"b3", K(1)}}), K(1)},
            {"5", t({{"b1", K(1)}, {"a2", K(1)}, {"b3", K(1)}}), K(1)},
            {"6", t({{"b1", K(1)}, {"b2", K(1)}, {"a3", K(1)}}), K(1)}};
  if (claim_id == "g1eqn")
    return {{"1", t({{"min(x1,x23)", K(1)}}), Expr::pow(tilde_alpha_expr(), 3)},
            {"2", t({{"x12", K(1)}, {"x13", c_expr()}}), P() * (c_expr() + K(1))},
            {"3", t({{"x1", K(1)}, {"x123", K(1)}}), K(1)},
            {"4", t({{"x23", K(1)}, {"x123", K(1)}}), K(1)},
            {"5", t({{"x1", K(1)}, {"x12", K(1)}, {"x23", K(1)}}), K(1)},
            {"6", t({{"x23", K(1)}}), tilde_a_expr(2)},
            {"7", t({{"x1", K(1)}}), tilde_a_expr(3)}};
  if (claim_id == "g2eqn")
    return {{"1", t({{"x1", K(1)}}), tilde_a_expr(4)},
            {"2", t({{"x13", K(1)}}), tilde_a_expr(2)},
            {"3", t({{"x2", K(1)}}), Expr::pow(tilde_alpha_expr(), 4)},
            {"4", t({{"x13", K(1)}, {"x123", K(1)}}), K(1)},
            {"5", t({{"x1", K(1)}, {"x12", K(1)}, {"x23", K(1)}}), K(1)},
            {"6", t({{"x2", K(1)}, {"x12", K(1)}, {"x13", K(1)}}), K(1)},
            {"7", t({{"x1", K(1)}, {"x2", K(1)}, {"x123", K(1)}}), K(1)}};
  if (claim_id == "g3eqn")
    return {{"1", t({{"x1", K(1)}}), tilde_a_expr(4)},
            {"2", t({{"x12", K(1)}}), tilde_a_expr(2)},
            {"3", t({{"x2", K(1)}}), Expr::pow(tilde_alpha_expr(), 4)},
            {"4", t({{"x12", K(1)}, {"x123", K(1)}}), K(1)},
            {"5", t({{"x1", K(1)}, {"x12", K(1)}, {"x23", K(1)}}), K(1)},
            {"6", t({{"x2", K(1)}, {"x12", K(1)}, {"x13", K(1)}}), K(1)},
            {"7", t({{"x1", K(1)}, {"x2", K(1)}, {"x123", K(1)}}), K(1)},
            {"8", t({{"x3", K(1)}, {"x2", K(-1)}}), K(0)},
            {"9", t({{"x23", K(1)}, {"x13", K(-1)}}), K(0)},
            {"10", t({{"x13", K(1)}, {"x12", K(-1)}}), K(0)}};
  if (claim_id == "g0eqn")
    return {{"1", t({{"x0", K(1)}}), Expr::pow(tilde_alpha_expr(), 7)},
            {"2", t({{"x2", K(1)}}), Expr::pow(tilde_alpha_expr(), 4)},
            {"3", t({{"x1", K(1)}}), tilde_a_expr(5)},
            {"4", t({{"x123", K(1)}}), P()},
            {"5", t({{"x1", K(1)}, {"x12", K(1)}, {"x23", K(1)}}), K(1)},
            {"6", t({{"x3", K(1)}, {"x2", K(-1)}}), K(0)},
            {"7", t({{"x23", K(1)}, {"x13", K(-1)}}), K(0)},
            {"8", t({{"x13", K(1)}, {"x12", K(-1)}}), K(0)},
            {"9", t({{"x12", K(1)}, {"x123", K(-1)}}), K(0)}};
  throw std::invalid_argument("claim_rows: unknown claim '" + claim_id + "'");
}

// --- JSON ----------------------------------------------------------------------

inline nlohmann::json to_json(const ProofReport& pr) {
  nlohmann::json j;
  j["status"] = pr.status == ProofStatus::Proved
                    ? "proved"
                    : (pr.status == ProofStatus::Violated ? "violated" : "inconclusive");
  j["method"] = pr.method;
  j["boxes_examined"] = pr.boxes_examined;
  if (pr.witness) j["witness_box"] = {rat_str(pr.witness->lo), rat_str(pr.witness->hi)};
  return j;
}

inline nlohmann::json to_json(const CertificateReport& report) {
  nlohmann::json j;
  j["case_id"] = report.case_id;
  j["interval"] = {rat_str(report.interval.lo), rat_str(report.interval.hi)};
  j["status"] = report.passed ? "PASS" : "FAIL";
  j["objective_identity"] = report.objective_identity;
  j["checks"] = nlohmann::json::array();
  for (const CheckEntry& entry : report.entries) {
    nlohmann::json e = to_json(entry.proof);
    e["kind"] = entry.kind;
    e["column_or_index"] = entry.subject;
    j["checks"].push_back(std::move(e));
  }
  return j;
}

inline nlohmann::json to_json(const DualCertificate& cert) {
  nlohmann::json j;
  j["case_id"] = cert.case_id;
  j["description"] = cert.description;
  j["interval"] = {rat_str(cert.p_interval.lo), rat_str(cert.p_interval.hi)};
  j["variables"] = cert.lp.var_names;
  j["target"] = cert.target.str();
  nlohmann::json rows = nlohmann::json::array();
  for (size_t i = 0; i < cert.lp.rows.size(); ++i) {
    nlohmann::json r;
    r["label"] = cert.lp.rows[i].label;
    r["rhs"] = cert.lp.rows[i].rhs.str();
    nlohmann::json coeffs = nlohmann::json::array();
    for (const Expr& e : cert.lp.rows[i].coeffs) coeffs.push_back(e.str());
    r["coeffs"] = std::move(coeffs);
    r["dual"] = cert.dual[i].str();
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  nlohmann::json obj = nlohmann::json::array();
  for (const Expr& e : cert.lp.objective) obj.push_back(e.str());
  j["objective"] = std::move(obj);
  return j;
}

}  // namespace triwise
