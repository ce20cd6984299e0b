#pragma once

#include "maximin/model.hpp"

#include <span>
#include <vector>

namespace maximin {

// R_{beta;b} = b'Sb - 2 beta'Sb + beta'S beta, residual variance without noise.
double pop_residual_variance(const Vector& beta, const Vector& b, const Matrix& sigma);

// V_{beta;b} = 2 beta'Sb - beta'S beta, explained variance relative to a zero
// prediction.
double pop_explained_variance(const Vector& beta, const Vector& b, const Matrix& sigma);

// Sufficient statistics of one group: c_g = X_g'Y_g / n_g and the empirical
// Gram matrix X_g'X_g / n_g.
struct GroupMoments {
  Vector cross;
  Matrix gram;
  Index size = 0;
};

GroupMoments group_moments(const Dataset& dataset, std::span<const Index> group);
std::vector<GroupMoments> group_moments(const Dataset& dataset, const GroupSpec& spec);

// (2/n_g) beta'X_g'Y_g - beta' Sigma_g beta, computed from the rows directly.
double emp_explained_variance(const Dataset& dataset, std::span<const Index> group, const Vector& beta);
double emp_explained_variance(const GroupMoments& moments, const Vector& beta);
Vector emp_explained_variances(const std::vector<GroupMoments>& moments, const Vector& beta);

struct SeriesReport {
  std::vector<double> cumsum;
  bool standardized = false;
};

// Partial sums of Y_t * Yhat_t. With standardize, both series are centered and
// scaled to unit (1/n) variance first.
SeriesReport cumulative_cross_product(const Vector& y, const Vector& yhat, bool standardize);

// Centers and scales to mean 0, biased variance 1. Throws DegenerateVariance.
Vector standardize(const Vector& v);

}  // namespace maximin
