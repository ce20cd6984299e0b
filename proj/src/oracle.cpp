#include "maximin/oracle.hpp"

#include "maximin/error.hpp"
#include "maximin/simplex_qp.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace maximin {
namespace {

constexpr int kMaxIterations = 200000;

Matrix sigma_gram(const SupportSet& support) {
  const Matrix B = support.point_matrix();
  return B.transpose() * support.sigma * B;
}

}  // namespace

Vector pooled_effect(const SupportSet& support, const Vector& weights) {
  validate(support);
  if (weights.size() != support.d()) {
    throw Error(ErrorCode::WeightsInvalid, "weights have length " + std::to_string(weights.size()) +
                                               ", support has " + std::to_string(support.d()) + " points");
  }
  if (!weights.allFinite() || weights.minCoeff() < 0.0 || std::abs(weights.sum() - 1.0) > 1e-9) {
    throw Error(ErrorCode::WeightsInvalid, "weights must be nonnegative and sum to 1");
  }
  return support.point_matrix() * weights;
}

HullPoint maximin_projection(const SupportSet& support, double tol) {
  validate(support);
  const Matrix K = sigma_gram(support);
  const double scale = std::max(1.0, K.diagonal().maxCoeff());
  const SimplexQpResult qp = minimize_on_simplex(K, Vector::Zero(K.rows()), tol * scale, kMaxIterations);
  if (!qp.converged) throw NonConvergedError("maximin projection did not converge", qp.gap);
  HullPoint out;
  out.weights = qp.weights;
  out.point = support.point_matrix() * qp.weights;
  out.gap = qp.gap;
  out.iterations = qp.iterations;
  return out;
}

Vector maximin_effect(const SupportSet& support, double tol) {
  return maximin_projection(support, tol).point;
}

Vector pred_maximin_effect(const SupportSet& support, double tol) {
  validate(support);
  const Matrix K = sigma_gram(support);
  const double scale = std::max(1.0, K.diagonal().maxCoeff());
  const SimplexQpResult qp = minimize_on_simplex(K, K.diagonal(), tol * scale, kMaxIterations);
  if (!qp.converged) throw NonConvergedError("pred-maximin dual did not converge", qp.gap);
  return support.point_matrix() * qp.weights;
}

ConservativeCheck conservative_check(const SupportSet& support, const Vector& beta, double tol) {
  ConservativeCheck out;
  const Vector s_beta = support.sigma * beta;
  const double self = s_beta.dot(beta);
  out.worst_inner_product = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < support.d(); ++j) {
    const double ip = s_beta.dot(support.points[static_cast<std::size_t>(j)]) - self;
    if (ip < out.worst_inner_product) {
      out.worst_inner_product = ip;
      out.worst_point = j;
    }
  }
  double scale = 1.0;
  for (const auto& b : support.points) scale = std::max(scale, b.dot(support.sigma * b));
  out.conservative = out.worst_inner_product >= -tol * scale;
  return out;
}

}  // namespace maximin
