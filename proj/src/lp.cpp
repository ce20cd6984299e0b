#include "maximin/lp.hpp"

#include "maximin/error.hpp"

#include <cmath>
#include <limits>
#include <span>

namespace maximin {

LinearProgram::LinearProgram(Index rows_, Index cols_)
    : rows(rows_),
      cols(cols_),
      a(static_cast<std::size_t>(rows_ * cols_), 0.0),
      rhs(static_cast<std::size_t>(rows_), 0.0),
      sense(static_cast<std::size_t>(rows_), RowSense::less_equal),
      cost(static_cast<std::size_t>(cols_), 0.0) {}

namespace {

class Tableau {
 public:
  Tableau(Index m, Index width) : m_(m), width_(width), t_(static_cast<std::size_t>(m * width), 0.0) {}

  std::span<double> row(Index i) {
    return {t_.data() + static_cast<std::size_t>(i * width_), static_cast<std::size_t>(width_)};
  }
  double& operator()(Index i, Index j) { return t_[static_cast<std::size_t>(i * width_ + j)]; }

  // Pivots on (r, c), updating the reduced-cost row z as well.
  void pivot(Index r, Index c, std::vector<double>& z) {
    auto pr = row(r);
    const double inv = 1.0 / pr[static_cast<std::size_t>(c)];
    for (double& v : pr) v *= inv;
    pr[static_cast<std::size_t>(c)] = 1.0;
    for (Index i = 0; i < m_; ++i) {
      if (i == r) continue;
      auto ri = row(i);
      const double f = ri[static_cast<std::size_t>(c)];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < ri.size(); ++j) ri[j] -= f * pr[j];
      ri[static_cast<std::size_t>(c)] = 0.0;
    }
    const double f = z[static_cast<std::size_t>(c)];
    if (f != 0.0) {
      for (std::size_t j = 0; j < z.size(); ++j) z[j] -= f * pr[j];
      z[static_cast<std::size_t>(c)] = 0.0;
    }
  }

 private:
  Index m_;
  Index width_;
  std::vector<double> t_;
};

enum class Outcome { optimal, unbounded, iteration_limit };

struct Simplex {
  Tableau& t;
  std::vector<double>& z;  // reduced costs; z[rhs] holds -objective
  std::vector<Index>& basis;
  Index m;
  Index rhs_col;
  const LpOptions& opt;
  int iterations = 0;

  Outcome run(Index n_enter) {
    bool bland = false;
    while (iterations < opt.max_iterations) {
      Index enter = -1;
      double best = -opt.cost_tol;
      for (Index j = 0; j < n_enter; ++j) {
        const double r = z[static_cast<std::size_t>(j)];
        if (r < best) {
          enter = j;
          if (bland) break;
          best = r;
        }
      }
      if (enter < 0) return Outcome::optimal;

      Index leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Index i = 0; i < m; ++i) {
        const double coef = t(i, enter);
        if (coef <= opt.pivot_tol) continue;
        const double ratio = t(i, rhs_col) / coef;
        if (leave < 0) {
          best_ratio = ratio;
          leave = i;
          continue;
        }
        const double slack = 1e-12 * std::max(1.0, std::abs(best_ratio));
        if (ratio < best_ratio - slack ||
            (ratio <= best_ratio + slack && basis[static_cast<std::size_t>(i)] <
                                                basis[static_cast<std::size_t>(leave)])) {
          best_ratio = std::min(ratio, best_ratio);
          leave = i;
        }
      }
      if (leave < 0) return Outcome::unbounded;

      bland = best_ratio <= 1e-12;
      t.pivot(leave, enter, z);
      basis[static_cast<std::size_t>(leave)] = enter;
      ++iterations;
    }
    return Outcome::iteration_limit;
  }
};

}  // namespace

LpResult solve_lp(LinearProgram lp, const LpOptions& opt) {
  const Index m = lp.rows;
  const Index n = lp.cols;
  if (static_cast<Index>(lp.a.size()) != m * n || static_cast<Index>(lp.rhs.size()) != m ||
      static_cast<Index>(lp.sense.size()) != m || static_cast<Index>(lp.cost.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "linear program arrays do not match rows x cols");
  }

  // Make every right-hand side nonnegative.
  for (Index i = 0; i < m; ++i) {
    auto& b = lp.rhs[static_cast<std::size_t>(i)];
    if (b < 0.0) {
      b = -b;
      for (Index j = 0; j < n; ++j) lp.at(i, j) = -lp.at(i, j);
      auto& s = lp.sense[static_cast<std::size_t>(i)];
      if (s == RowSense::less_equal) s = RowSense::greater_equal;
      else if (s == RowSense::greater_equal) s = RowSense::less_equal;
    }
  }

  Index n_slack = 0;
  Index n_art = 0;
  for (auto s : lp.sense) {
    if (s != RowSense::equal) ++n_slack;
    if (s != RowSense::less_equal) ++n_art;
  }
  const Index n_real = n + n_slack;  // columns allowed in phase 2
  const Index n_total = n_real + n_art;
  const Index rhs_col = n_total;
  Tableau t(m, n_total + 1);
  std::vector<Index> basis(static_cast<std::size_t>(m), -1);

  Index slack_col = n;
  Index art_col = n_real;
  for (Index i = 0; i < m; ++i) {
    auto dst = t.row(i);
    for (Index j = 0; j < n; ++j) dst[static_cast<std::size_t>(j)] = lp.at(i, j);
    dst[static_cast<std::size_t>(rhs_col)] = lp.rhs[static_cast<std::size_t>(i)];
    const auto s = lp.sense[static_cast<std::size_t>(i)];
    if (s == RowSense::less_equal) {
      dst[static_cast<std::size_t>(slack_col)] = 1.0;
      basis[static_cast<std::size_t>(i)] = slack_col++;
    } else {
      if (s == RowSense::greater_equal) dst[static_cast<std::size_t>(slack_col++)] = -1.0;
      dst[static_cast<std::size_t>(art_col)] = 1.0;
      basis[static_cast<std::size_t>(i)] = art_col++;
    }
  }
  // Free the input matrix before iterating.
  std::vector<double>().swap(lp.a);

  LpResult result;
  std::vector<double> z(static_cast<std::size_t>(n_total + 1), 0.0);
  Simplex simplex{t, z, basis, m, rhs_col, opt};

  // Phase 1: minimize the sum of artificials.
  if (n_art > 0) {
    for (Index j = n_real; j < n_total; ++j) z[static_cast<std::size_t>(j)] = 1.0;
    for (Index i = 0; i < m; ++i) {
      if (basis[static_cast<std::size_t>(i)] < n_real) continue;
      auto r = t.row(i);
      for (std::size_t j = 0; j < z.size(); ++j) z[j] -= r[j];
    }
    const Outcome phase1 = simplex.run(n_total);
    result.iterations = simplex.iterations;
    if (phase1 == Outcome::iteration_limit) {
      result.status = LpStatus::iteration_limit;
      return result;
    }
    double bmax = 1.0;
    for (double b : lp.rhs) bmax = std::max(bmax, b);
    if (-z[static_cast<std::size_t>(rhs_col)] > opt.feasibility_tol * bmax) {
      result.status = LpStatus::infeasible;
      return result;
    }
    // Drive remaining (zero-level) artificials out of the basis.
    for (Index i = 0; i < m; ++i) {
      if (basis[static_cast<std::size_t>(i)] < n_real) continue;
      Index col = -1;
      double best = 1e-9;
      for (Index j = 0; j < n_real; ++j) {
        const double v = std::abs(t(i, j));
        if (v > best) {
          best = v;
          col = j;
        }
      }
      // A row with no usable column is redundant; its artificial stays basic
      // at zero and never re-enters.
      if (col >= 0) {
        t.pivot(i, col, z);
        basis[static_cast<std::size_t>(i)] = col;
      }
    }
  }

  // Phase 2 reduced costs.
  auto column_cost = [&](Index j) { return j < n ? lp.cost[static_cast<std::size_t>(j)] : 0.0; };
  std::fill(z.begin(), z.end(), 0.0);
  for (Index j = 0; j < n; ++j) z[static_cast<std::size_t>(j)] = lp.cost[static_cast<std::size_t>(j)];
  for (Index i = 0; i < m; ++i) {
    const double cb = column_cost(basis[static_cast<std::size_t>(i)]);
    if (cb == 0.0 || basis[static_cast<std::size_t>(i)] >= n_real) continue;
    auto r = t.row(i);
    for (std::size_t j = 0; j < z.size(); ++j) z[j] -= cb * r[j];
  }
  const Outcome phase2 = simplex.run(n_real);
  result.iterations = simplex.iterations;
  if (phase2 == Outcome::unbounded) {
    result.status = LpStatus::unbounded;
    return result;
  }
  if (phase2 == Outcome::iteration_limit) {
    result.status = LpStatus::iteration_limit;
    return result;
  }

  result.status = LpStatus::optimal;
  result.x.assign(static_cast<std::size_t>(n), 0.0);
  for (Index i = 0; i < m; ++i) {
    const Index b = basis[static_cast<std::size_t>(i)];
    if (b < n) result.x[static_cast<std::size_t>(b)] = std::max(0.0, t(i, rhs_col));
  }
  double obj = 0.0;
  for (Index j = 0; j < n; ++j) obj += lp.cost[static_cast<std::size_t>(j)] * result.x[static_cast<std::size_t>(j)];
  result.objective = obj;
  return result;
}

}  // namespace maximin
