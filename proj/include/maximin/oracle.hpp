#pragma once

#include "maximin/model.hpp"

namespace maximin {

// E_B[B] = sum_j w_j b_j. Throws WeightsInvalid unless the weights are a
// probability vector of length d.
Vector pooled_effect(const SupportSet& support, const Vector& weights);

struct HullPoint {
  Vector point;
  Vector weights;  // simplex weights reconstructing point from the support
  double gap = 0.0;
  int iterations = 0;
};

// Point of the convex hull of the support closest to the origin in the
// Sigma-metric, which is the maximin effect. Throws NonConvergedError.
HullPoint maximin_projection(const SupportSet& support, double tol = 1e-9);
Vector maximin_effect(const SupportSet& support, double tol = 1e-9);

// argmin_beta max_j R_{beta;b_j}: the center of the smallest Sigma-ellipsoid
// enclosing the support, found from its dual over the simplex.
Vector pred_maximin_effect(const SupportSet& support, double tol = 1e-9);

struct ConservativeCheck {
  bool conservative = false;
  double worst_inner_product = 0.0;  // min_j beta' Sigma (b_j - beta)
  Index worst_point = 0;
};

ConservativeCheck conservative_check(const SupportSet& support, const Vector& beta, double tol = 1e-9);

}  // namespace maximin
