#include "maximin/variance.hpp"

#include "maximin/error.hpp"

#include <cmath>
#include <string>

namespace maximin {
namespace {

void check_dims(const Vector& beta, const Vector& b, const Matrix& sigma) {
  if (beta.size() != b.size() || sigma.rows() != b.size() || sigma.cols() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "beta has length " + std::to_string(beta.size()) + ", b has length " +
                    std::to_string(b.size()) + ", sigma is " + std::to_string(sigma.rows()) + "x" +
                    std::to_string(sigma.cols()));
  }
}

}  // namespace

double pop_residual_variance(const Vector& beta, const Vector& b, const Matrix& sigma) {
  check_dims(beta, b, sigma);
  const Vector diff = b - beta;
  // Evaluated as a quadratic form in (b - beta) so the result stays >= 0 up to
  // rounding of a PSD form.
  return std::max(0.0, diff.dot(sigma * diff));
}

double pop_explained_variance(const Vector& beta, const Vector& b, const Matrix& sigma) {
  check_dims(beta, b, sigma);
  const Vector s_beta = sigma * beta;
  return 2.0 * s_beta.dot(b) - s_beta.dot(beta);
}

GroupMoments group_moments(const Dataset& dataset, std::span<const Index> group) {
  if (group.empty()) throw Error(ErrorCode::EmptyGroup, "group has no observations");
  const Index p = dataset.p();
  const Index m = static_cast<Index>(group.size());
  Matrix Xg(m, p);
  Vector Yg(m);
  for (Index k = 0; k < m; ++k) {
    Xg.row(k) = dataset.X.row(group[static_cast<std::size_t>(k)]);
    Yg(k) = dataset.Y(group[static_cast<std::size_t>(k)]);
  }
  GroupMoments out;
  out.size = m;
  out.cross = Xg.transpose() * Yg / static_cast<double>(m);
  out.gram = Matrix::Zero(p, p);
  out.gram.selfadjointView<Eigen::Lower>().rankUpdate(Xg.transpose(), 1.0 / static_cast<double>(m));
  out.gram = out.gram.selfadjointView<Eigen::Lower>();
  return out;
}

std::vector<GroupMoments> group_moments(const Dataset& dataset, const GroupSpec& spec) {
  std::vector<GroupMoments> out;
  out.reserve(spec.groups.size());
  for (const auto& g : spec.groups) out.push_back(group_moments(dataset, g));
  return out;
}

double emp_explained_variance(const Dataset& dataset, std::span<const Index> group, const Vector& beta) {
  if (group.empty()) throw Error(ErrorCode::EmptyGroup, "group has no observations");
  if (beta.size() != dataset.p()) {
    throw Error(ErrorCode::DimensionMismatch, "beta has length " + std::to_string(beta.size()) +
                                                  ", X has " + std::to_string(dataset.p()) + " columns");
  }
  double cross = 0.0;
  double square = 0.0;
  for (Index i : group) {
    const double pred = dataset.X.row(i).dot(beta);
    cross += dataset.Y(i) * pred;
    square += pred * pred;
  }
  const double m = static_cast<double>(group.size());
  return (2.0 * cross - square) / m;
}

double emp_explained_variance(const GroupMoments& moments, const Vector& beta) {
  if (beta.size() != moments.cross.size()) {
    throw Error(ErrorCode::DimensionMismatch, "beta length does not match group moments");
  }
  return 2.0 * beta.dot(moments.cross) - beta.dot(moments.gram * beta);
}

Vector emp_explained_variances(const std::vector<GroupMoments>& moments, const Vector& beta) {
  Vector out(static_cast<Index>(moments.size()));
  for (std::size_t g = 0; g < moments.size(); ++g) {
    out(static_cast<Index>(g)) = emp_explained_variance(moments[g], beta);
  }
  return out;
}

Vector standardize(const Vector& v) {
  const double n = static_cast<double>(v.size());
  const double mean = v.mean();
  const Vector centered = v.array() - mean;
  const double var = centered.squaredNorm() / n;
  if (!(var > 0.0) || !std::isfinite(var)) {
    throw Error(ErrorCode::DegenerateVariance, "series has zero variance");
  }
  return centered / std::sqrt(var);
}

SeriesReport cumulative_cross_product(const Vector& y, const Vector& yhat, bool standardize_series) {
  if (y.size() != yhat.size() || y.size() < 1) {
    throw Error(ErrorCode::LengthMismatch, "Y has length " + std::to_string(y.size()) +
                                               ", Yhat has length " + std::to_string(yhat.size()));
  }
  Vector a = y;
  Vector b = yhat;
  if (standardize_series) {
    a = standardize(y);
    b = standardize(yhat);
  }
  SeriesReport report;
  report.standardized = standardize_series;
  report.cumsum.resize(static_cast<std::size_t>(y.size()));
  double acc = 0.0;
  for (Index t = 0; t < y.size(); ++t) {
    acc += a(t) * b(t);
    report.cumsum[static_cast<std::size_t>(t)] = acc;
  }
  return report;
}

}  // namespace maximin
