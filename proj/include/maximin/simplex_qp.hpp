#pragma once

#include "maximin/model.hpp"

namespace maximin {

struct SimplexQpResult {
  Vector weights;
  double value = 0.0;
  // Frank-Wolfe duality gap at the returned weights.
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Minimizes w'Kw - h'w over the probability simplex with away-step
// Frank-Wolfe and exact line search. K must be symmetric PSD. Stops once the
// duality gap drops below tol.
SimplexQpResult minimize_on_simplex(const Matrix& K, const Vector& h, double tol, int max_iter);

}  // namespace maximin
