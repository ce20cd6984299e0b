#include "maximin/model.hpp"

#include "maximin/error.hpp"

#include <cmath>
#include <string>

namespace maximin {

Matrix SupportSet::point_matrix() const {
  Matrix B(p(), d());
  for (Index j = 0; j < d(); ++j) B.col(j) = points[static_cast<std::size_t>(j)];
  return B;
}

void PenaltyConfig::validate() const {
  if (!(zeta > 0.0 && zeta < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "zeta must lie in (0,1), got " + std::to_string(zeta));
  }
  if (max_iter < 1) throw Error(ErrorCode::InvalidArgument, "max_iter must be positive");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (const auto* pen = std::get_if<Penalized>(&mode)) {
    if (!(pen->lambda >= 0.0) || !std::isfinite(pen->lambda)) {
      throw Error(ErrorCode::InvalidArgument, "lambda must be a finite value >= 0");
    }
  } else if (const auto* con = std::get_if<Constrained>(&mode)) {
    if (!(con->kappa > 0.0) || !std::isfinite(con->kappa)) {
      throw Error(ErrorCode::InvalidArgument, "kappa must be a finite value > 0");
    }
  }
}

void validate(const Dataset& dataset) {
  if (dataset.n() < 1) throw Error(ErrorCode::InvalidSize, "X has no rows");
  if (dataset.p() < 1) throw Error(ErrorCode::InvalidSize, "X has no columns");
  if (dataset.Y.size() != dataset.n()) {
    throw Error(ErrorCode::LengthMismatch, "Y has length " + std::to_string(dataset.Y.size()) +
                                               " but X has " + std::to_string(dataset.n()) + " rows");
  }
  for (Index j = 0; j < dataset.p(); ++j) {
    for (Index i = 0; i < dataset.n(); ++i) {
      if (!std::isfinite(dataset.X(i, j))) {
        throw Error(ErrorCode::NonFiniteData, "X has a non-finite entry at row " +
                                                  std::to_string(i + 1) + ", column " +
                                                  std::to_string(j + 1));
      }
    }
  }
  for (Index i = 0; i < dataset.n(); ++i) {
    if (!std::isfinite(dataset.Y(i))) {
      throw Error(ErrorCode::NonFiniteData, "Y has a non-finite entry at row " + std::to_string(i + 1));
    }
  }
}

void validate(const Dataset& dataset, const GroupSpec& spec) {
  validate(dataset);
  if (spec.groups.empty()) throw Error(ErrorCode::EmptyGroup, "groups: no groups given");
  const Index n = dataset.n();
  std::vector<char> seen;
  if (spec.sampling == Sampling::partition) seen.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t g = 0; g < spec.groups.size(); ++g) {
    const auto& group = spec.groups[g];
    if (group.empty()) {
      throw Error(ErrorCode::EmptyGroup, "groups[" + std::to_string(g + 1) + "] is empty");
    }
    for (Index i : group) {
      if (i < 0 || i >= n) {
        throw Error(ErrorCode::IndexOutOfRange, "groups[" + std::to_string(g + 1) + "] contains index " +
                                                    std::to_string(i + 1) + " outside [1, " +
                                                    std::to_string(n) + "]");
      }
      if (spec.sampling == Sampling::partition) {
        auto& flag = seen[static_cast<std::size_t>(i)];
        if (flag) {
          throw Error(ErrorCode::IndexOutOfRange, "groups[" + std::to_string(g + 1) + "] repeats index " +
                                                      std::to_string(i + 1) + " in partition mode");
        }
        flag = 1;
      }
    }
  }
}

void validate(const SupportSet& support) {
  if (support.points.empty()) throw Error(ErrorCode::InvalidSize, "support: no points");
  const Index p = support.sigma.rows();
  if (p < 1 || support.sigma.cols() != p) {
    throw Error(ErrorCode::DimensionMismatch, "sigma must be a non-empty square matrix");
  }
  for (std::size_t j = 0; j < support.points.size(); ++j) {
    if (support.points[j].size() != p) {
      throw Error(ErrorCode::DimensionMismatch, "support point " + std::to_string(j + 1) + " has length " +
                                                    std::to_string(support.points[j].size()) +
                                                    ", sigma is " + std::to_string(p) + "x" +
                                                    std::to_string(p));
    }
    if (!support.points[j].allFinite()) {
      throw Error(ErrorCode::NonFiniteData, "support point " + std::to_string(j + 1) + " is not finite");
    }
  }
  if (!support.sigma.allFinite()) throw Error(ErrorCode::NonFiniteData, "sigma is not finite");
  if ((support.sigma - support.sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorCode::NotPositiveDefinite, "sigma is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(support.sigma, Eigen::EigenvaluesOnly);
  if (!(eig.eigenvalues().minCoeff() > 0.0)) {
    throw Error(ErrorCode::NotPositiveDefinite, "sigma has a nonpositive eigenvalue");
  }
}

double norm(const Vector& v, Norm q) {
  return q == Norm::L1 ? v.lpNorm<1>() : v.norm();
}

double dual_norm(const Vector& v, Norm q) {
  return q == Norm::L1 ? v.lpNorm<Eigen::Infinity>() : v.norm();
}

}  // namespace maximin
