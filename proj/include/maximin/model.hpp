#pragma once

#include <Eigen/Dense>

#include <variant>
#include <vector>

namespace maximin {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Response Y (length n) and predictors X (n x p). Rows are observations.
struct Dataset {
  Matrix X;
  Vector Y;
  bool time_ordered = false;

  Index n() const { return X.rows(); }
  Index p() const { return X.cols(); }
};

enum class Sampling { partition, with_replacement };

// Groups of observation indices. Indices are 0-based in memory; the I/O layer
// converts to and from the 1-based form.
struct GroupSpec {
  std::vector<std::vector<Index>> groups;
  Sampling sampling = Sampling::partition;

  Index size() const { return static_cast<Index>(groups.size()); }
};

// Finite support b_1..b_d of the coefficient distribution together with the
// population Gram matrix of the predictors.
struct SupportSet {
  std::vector<Vector> points;
  Matrix sigma;

  Index d() const { return static_cast<Index>(points.size()); }
  Index p() const { return sigma.rows(); }
  // p x d matrix whose columns are the support points.
  Matrix point_matrix() const;
};

enum class Norm { L1, L2 };

struct Penalized {
  double lambda = 0.0;
};
struct Constrained {
  double kappa = 1.0;
};
struct Maximal {};

using PenaltyMode = std::variant<Penalized, Constrained, Maximal>;

struct PenaltyConfig {
  Norm q = Norm::L1;
  PenaltyMode mode = Penalized{0.0};
  double zeta = 0.01;
  int max_iter = 50;
  double tol = 1e-8;
  // Replace the power-mean solution by the exact worst-group optimum.
  bool refine = false;

  void validate() const;
};

struct MaximinFit {
  Vector beta;
  double scale = 1.0;
  Vector group_V;
  int iterations = 0;
  bool converged = false;
  // Penalty level the solution corresponds to (found by bisection in
  // constrained mode).
  double lambda = 0.0;
  // Sum_g w_g V^g - min_g V^g at the returned weights; zero at the optimum.
  double duality_gap = 0.0;

  Vector coefficients() const { return scale * beta; }
};

// Checks the joint invariants of a dataset and a grouping. Throws Error with
// IndexOutOfRange, EmptyGroup, NonFiniteData, LengthMismatch or
// DimensionMismatch naming the offending field.
void validate(const Dataset& dataset, const GroupSpec& spec);
void validate(const Dataset& dataset);

// Symmetry within 1e-12, strictly positive smallest eigenvalue, d >= 1 and
// consistent point dimensions.
void validate(const SupportSet& support);

double norm(const Vector& v, Norm q);
double dual_norm(const Vector& v, Norm q);

}  // namespace maximin
