#include "maximin/simplex_qp.hpp"

#include "maximin/error.hpp"

#include <Eigen/Dense>

#include <limits>
#include <vector>

namespace maximin {

namespace {

// Moves w toward the minimizer over the affine hull of its support, as far as
// the simplex allows.
void face_step(const Matrix& K, const Vector& h, Vector& w) {
  std::vector<Index> active;
  for (Index j = 0; j < w.size(); ++j) {
    if (w(j) > 0.0) active.push_back(j);
  }
  const auto k = static_cast<Index>(active.size());
  if (k < 2) return;
  Matrix kkt = Matrix::Zero(k + 1, k + 1);
  Vector rhs(k + 1);
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) kkt(i, j) = 2.0 * K(active[static_cast<std::size_t>(i)], active[static_cast<std::size_t>(j)]);
    kkt(i, k) = 1.0;
    kkt(k, i) = 1.0;
    rhs(i) = h(active[static_cast<std::size_t>(i)]);
  }
  rhs(k) = 1.0;
  const Vector sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  Vector dir = Vector::Zero(w.size());
  double max_step = 1.0;
  for (Index i = 0; i < k; ++i) {
    const Index j = active[static_cast<std::size_t>(i)];
    dir(j) = sol(i) - w(j);
    if (dir(j) < 0.0) max_step = std::min(max_step, w(j) / -dir(j));
  }
  const Vector Kd = K * dir;
  const double slope = (2.0 * K * w - h).dot(dir);
  const double curvature = dir.dot(Kd);
  if (!(slope < 0.0)) return;
  double step = max_step;
  if (curvature > 0.0) step = std::min(max_step, -slope / (2.0 * curvature));
  w += step * dir;
  w = w.cwiseMax(0.0);
  w /= w.sum();
}

}  // namespace

SimplexQpResult minimize_on_simplex(const Matrix& K, const Vector& h, double tol, int max_iter) {
  const Index d = K.rows();
  if (d < 1 || K.cols() != d || h.size() != d) {
    throw Error(ErrorCode::DimensionMismatch, "simplex QP needs a square K matching h");
  }

  // Start at the best vertex.
  Index start = 0;
  (K.diagonal() - h).minCoeff(&start);
  Vector w = Vector::Zero(d);
  w(start) = 1.0;
  Vector Kw = K.col(start);

  SimplexQpResult out;
  for (int it = 0; it < max_iter; ++it) {
    if (it % 64 == 63) {
      face_step(K, h, w);
      Kw.noalias() = K * w;
    }
    const Vector grad = 2.0 * Kw - h;
    const double gw = grad.dot(w);
    Index s = 0;
    const double gs = grad.minCoeff(&s);
    Index a = -1;
    double ga = -std::numeric_limits<double>::infinity();
    for (Index j = 0; j < d; ++j) {
      if (w(j) > 0.0 && grad(j) > ga) {
        ga = grad(j);
        a = j;
      }
    }
    out.gap = gw - gs;
    out.iterations = it;
    if (out.gap <= tol) {
      out.converged = true;
      break;
    }

    const bool forward = (gw - gs) >= (ga - gw) || w(a) >= 1.0;
    Vector dir;
    Vector Kd;
    double max_step = 1.0;
    if (forward) {
      dir = -w;
      dir(s) += 1.0;
      Kd = K.col(s) - Kw;
    } else {
      dir = w;
      dir(a) -= 1.0;
      Kd = Kw - K.col(a);
      max_step = w(a) / (1.0 - w(a));
    }
    const double slope = grad.dot(dir);
    const double curvature = dir.dot(Kd);
    double step = max_step;
    if (curvature > 0.0) step = std::min(max_step, -slope / (2.0 * curvature));
    if (!(step > 0.0)) break;

    w += step * dir;
    Kw += step * Kd;
    if (!forward && step == max_step) w(a) = 0.0;
    w = w.cwiseMax(0.0);
  }
  if (!out.converged) {
    // Final gap at the last iterate.
    Kw.noalias() = K * w;
    const Vector grad = 2.0 * Kw - h;
    out.gap = grad.dot(w) - grad.minCoeff();
    out.converged = out.gap <= tol;
  }
  w /= w.sum();
  out.weights = w;
  out.value = w.dot(K * w) - h.dot(w);
  return out;
}

}  // namespace maximin
