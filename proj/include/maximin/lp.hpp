#pragma once

#include "maximin/model.hpp"

#include <vector>

namespace maximin {

enum class RowSense { less_equal, equal, greater_equal };
enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

// minimize cost'x  subject to  A x (sense) rhs,  x >= 0.
// A is stored densely, row-major, rows x cols.
struct LinearProgram {
  LinearProgram(Index rows, Index cols);

  double& at(Index r, Index c) { return a[static_cast<std::size_t>(r * cols + c)]; }
  double at(Index r, Index c) const { return a[static_cast<std::size_t>(r * cols + c)]; }

  Index rows;
  Index cols;
  std::vector<double> a;
  std::vector<double> rhs;
  std::vector<RowSense> sense;
  std::vector<double> cost;
};

struct LpResult {
  LpStatus status = LpStatus::iteration_limit;
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;
};

struct LpOptions {
  double pivot_tol = 1e-11;
  double cost_tol = 1e-10;
  double feasibility_tol = 1e-9;
  int max_iterations = 1000000;
};

// Dense two-phase tableau simplex. Dantzig pricing; after a degenerate pivot
// it switches to Bland's rule until the next nondegenerate pivot, and ratio
// ties always go to the smallest basic index, so it cannot cycle.
LpResult solve_lp(LinearProgram lp, const LpOptions& options = {});

}  // namespace maximin
