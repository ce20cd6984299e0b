#pragma once

#include "maximin/model.hpp"
#include "maximin/variance.hpp"

#include <span>
#include <vector>

namespace maximin {

// Group weights for the reweighted problem, normalized to sum to one.
struct WeightState {
  Vector group_weights;

  // Per-observation weights w_i = sum over groups containing i of w_g / n_g.
  // They sum to one and are constant inside each group of a partition.
  Vector observation_weights(const GroupSpec& spec, Index n) const;
};

// w_g proportional to max(V^g, floor)^(zeta - 1).
WeightState update_weights(const Vector& group_V, double zeta, double floor);

// argmin_beta beta'A beta - 2 c'beta + lambda ||beta||_q for PSD A. Coordinate
// descent for L1 (warm-started), eigen-decomposition plus a scalar root find
// for L2, a direct solve when lambda == 0.
Vector solve_weighted(const Matrix& A, const Vector& c, double lambda, Norm q, const Vector& warm, double tol);

// Upper end of the lambda bracket: 2 ||sum_g X_g'Y_g / sum_g n_g||_dual, where
// the pooled fit (and hence the maximin fit) is already zero.
double lambda_upper(const std::vector<GroupMoments>& moments, Norm q);

// Smallest lambda at which the maximin fit vanishes: 2 / ||beta_maximal||_q.
double maximin_lambda_max(const std::vector<Vector>& cross_products, Norm q);

// Power-mean reweighting with damping. objective[k] is
// M_zeta(V(beta_k)) - lambda ||beta_k||, the penalized power mean of the group
// explained variances after outer iteration k.
struct PowerMeanPath {
  Vector beta;
  Vector group_weights;
  std::vector<double> objective;
  int iterations = 0;
  bool converged = false;
};

PowerMeanPath power_mean_reweighting(const std::vector<GroupMoments>& moments, Norm q, double lambda, double zeta,
                                     int max_iter, double tol);

// Exact solution of max_beta min_g V^g(beta) - lambda ||beta||_q through its
// dual over group weights, starting from the given weights.
struct WorstGroupSolution {
  Vector beta;
  Vector group_weights;
  Vector group_V;
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

WorstGroupSolution solve_worst_group(const std::vector<GroupMoments>& moments, Norm q, double lambda,
                                     const Vector& start_weights, double tol, int max_iter);

// Penalized (lambda) or constrained (kappa) maximin estimator.
MaximinFit fit_reweighted(const Dataset& dataset, const GroupSpec& spec, const PenaltyConfig& config);
MaximinFit fit_reweighted(const std::vector<GroupMoments>& moments, const PenaltyConfig& config);

// argmin ||beta||_q subject to beta'c_g >= 1 for every group. Only the
// cross-products enter. Throws Infeasible when no direction aligns positively
// with every c_g.
struct MaximalDirection {
  Vector beta;
  int iterations = 0;
};
MaximalDirection maximal_penalty_direction(const std::vector<Vector>& cross_products, Norm q);
Vector fit_maximal_penalty(const std::vector<Vector>& cross_products, const PenaltyConfig& config);

// argmax_{s >= 0} min_g (2 s a_g - s^2 q_g) by ternary search, with
// a_g = beta'c_g and q_g = beta' Sigma_g beta.
double rescale(std::span<const double> a, std::span<const double> q);
double rescale(const Vector& beta, const Dataset& dataset, const GroupSpec& spec);
double rescale(const Vector& beta, const std::vector<GroupMoments>& moments);

// Maximal-penalty fit: LP direction in beta, the rescaling factor in scale.
MaximinFit fit_maximal(const Dataset& dataset, const GroupSpec& spec, const PenaltyConfig& config);
MaximinFit fit_maximal(const std::vector<GroupMoments>& moments, const PenaltyConfig& config);

// Dispatches on config.mode.
MaximinFit fit(const Dataset& dataset, const GroupSpec& spec, const PenaltyConfig& config);
MaximinFit fit(const std::vector<GroupMoments>& moments, const PenaltyConfig& config);

}  // namespace maximin
