#include "maximin/simulate.hpp"

#include "maximin/error.hpp"
#include "maximin/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace maximin {
namespace {

double standard_normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Stream ids keep design, noise and assignment draws independent of each
// other, so changing e.g. the noise level leaves X and B unchanged.
enum Stream : std::uint64_t { kDesign = 1, kNoise = 2, kAssign = 3 };

Matrix draw_design(Index n, const Matrix& sigma, CounterRng rng, const SimOptions& options, Matrix& sigma_true) {
  const Index p = sigma.rows();
  Matrix X(n, p);
  if (options.design == DesignKind::truncated_gaussian) {
    if (!(options.bound > 0.0)) throw Error(ErrorCode::InvalidArgument, "truncation bound must be positive");
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < p; ++j) {
        double z = 0.0;
        do {
          z = rng.normal();
        } while (std::abs(z) > options.bound);
        X(i, j) = z;
      }
    }
    sigma_true = truncated_normal_variance(options.bound) * Matrix::Identity(p, p);
    return X;
  }
  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::NotPositiveDefinite, "sigma is not positive definite");
  const Matrix L = llt.matrixL();
  Vector z(p);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < p; ++j) z(j) = rng.normal();
    X.row(i) = (L * z).transpose();
  }
  sigma_true = sigma;
  return X;
}

double draw_noise(CounterRng& rng, double sigma_noise, const SimOptions& options) {
  if (sigma_noise == 0.0) return 0.0;
  double z = rng.normal();
  if (options.noise == NoiseKind::student_t) {
    if (options.degrees_of_freedom < 1) throw Error(ErrorCode::InvalidArgument, "degrees of freedom must be >= 1");
    double chi2 = 0.0;
    for (int k = 0; k < options.degrees_of_freedom; ++k) {
      const double g = rng.normal();
      chi2 += g * g;
    }
    z /= std::sqrt(chi2 / options.degrees_of_freedom);
  }
  return sigma_noise * z;
}

// Fills X, Y and the realized coefficients given coefficient rows.
SimOutput assemble(Matrix coefficients, std::vector<Index> assignments, SupportSet support, double sigma_noise,
                   std::uint64_t seed, const SimOptions& options) {
  if (!(sigma_noise >= 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma_noise must be >= 0");
  const Index n = coefficients.rows();
  SimOutput out;
  CounterRng root(seed);
  out.dataset.X = draw_design(n, support.sigma, root.split(kDesign), options, out.sigma_true);
  CounterRng noise = root.split(kNoise);
  out.dataset.Y.resize(n);
  for (Index i = 0; i < n; ++i) {
    out.dataset.Y(i) = out.dataset.X.row(i).dot(coefficients.row(i)) + draw_noise(noise, sigma_noise, options);
  }
  out.coefficients = std::move(coefficients);
  out.assignments = std::move(assignments);
  support.sigma = out.sigma_true;
  out.support = std::move(support);
  return out;
}

Matrix rows_from_assignments(const SupportSet& support, const std::vector<Index>& assignments) {
  Matrix B(static_cast<Index>(assignments.size()), support.p());
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    B.row(static_cast<Index>(i)) = support.points[static_cast<std::size_t>(assignments[i])].transpose();
  }
  return B;
}

void check_n(Index n) {
  if (n < 1) throw Error(ErrorCode::InvalidSize, "n must be >= 1");
}

}  // namespace

double truncated_normal_variance(double M) {
  const double mass = 2.0 * standard_normal_cdf(M) - 1.0;
  return 1.0 - 2.0 * M * standard_normal_pdf(M) / mass;
}

SimOutput gen_finite_mixture(Index n, const SupportSet& support, const Vector& mix_weights, double sigma_noise,
                             std::uint64_t seed, const SimOptions& options) {
  check_n(n);
  validate(support);
  if (mix_weights.size() != support.d() || !mix_weights.allFinite() || mix_weights.minCoeff() < 0.0 ||
      std::abs(mix_weights.sum() - 1.0) > 1e-9) {
    throw Error(ErrorCode::WeightsInvalid, "mixture weights must be a probability vector of length d");
  }
  CounterRng assign = CounterRng(seed).split(kAssign);
  std::vector<Index> ids(static_cast<std::size_t>(n));
  for (auto& id : ids) {
    const double u = assign.uniform();
    double acc = 0.0;
    id = support.d() - 1;
    for (Index j = 0; j < support.d(); ++j) {
      acc += mix_weights(j);
      if (u < acc) {
        id = j;
        break;
      }
    }
    // Never land on a zero-weight trailing point through rounding.
    while (mix_weights(id) == 0.0 && id > 0) --id;
  }
  Matrix B = rows_from_assignments(support, ids);
  return assemble(std::move(B), std::move(ids), support, sigma_noise, seed, options);
}

SimOutput gen_jump_process(Index n, const SupportSet& support, double delta, double sigma_noise, std::uint64_t seed,
                           const SimOptions& options) {
  check_n(n);
  validate(support);
  if (!(delta >= 0.0 && delta <= 1.0)) throw Error(ErrorCode::InvalidArgument, "delta must lie in [0,1]");
  const auto J = static_cast<std::uint64_t>(support.d());
  CounterRng assign = CounterRng(seed).split(kAssign);
  std::vector<Index> ids(static_cast<std::size_t>(n));
  ids[0] = static_cast<Index>(assign.below(J));
  for (std::size_t i = 1; i < ids.size(); ++i) {
    ids[i] = assign.uniform() < delta ? static_cast<Index>(assign.below(J)) : ids[i - 1];
  }
  Matrix B = rows_from_assignments(support, ids);
  return assemble(std::move(B), std::move(ids), support, sigma_noise, seed, options);
}

SimOutput gen_contaminated(Index n, const Vector& b_star, const SupportSet& contaminants, double epsilon,
                           double sigma_noise, std::uint64_t seed, const SimOptions& options) {
  check_n(n);
  validate(contaminants);
  if (b_star.size() != contaminants.p()) {
    throw Error(ErrorCode::DimensionMismatch, "b_star length does not match the contaminant dimension");
  }
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must lie in [0,1)");
  SupportSet support;
  support.sigma = contaminants.sigma;
  support.points.push_back(b_star);
  for (const auto& u : contaminants.points) support.points.push_back(u);

  const auto n_contam = static_cast<std::uint64_t>(contaminants.d());
  CounterRng assign = CounterRng(seed).split(kAssign);
  std::vector<Index> ids(static_cast<std::size_t>(n));
  for (auto& id : ids) {
    id = assign.uniform() < epsilon ? 1 + static_cast<Index>(assign.below(n_contam)) : 0;
  }
  Matrix B = rows_from_assignments(support, ids);
  SimOutput out = assemble(std::move(B), std::move(ids), std::move(support), sigma_noise, seed, options);
  const Vector s_star = out.sigma_true * b_star;
  out.aligned = std::all_of(contaminants.points.begin(), contaminants.points.end(),
                            [&](const Vector& u) { return (u - b_star).dot(s_star) >= 0.0; });
  return out;
}

SimOutput gen_figure2(Index n, std::uint64_t seed, double sigma_noise) {
  if (n < 2) throw Error(ErrorCode::InvalidSize, "n must be >= 2");
  CounterRng assign = CounterRng(seed).split(kAssign);
  std::vector<double> eta(static_cast<std::size_t>(n));
  for (auto& e : eta) e = -4.0 + 10.0 * assign.uniform();
  std::sort(eta.begin(), eta.end(), std::greater<>());
  Matrix B(n, 2);
  for (Index i = 0; i < n; ++i) {
    B(i, 0) = 1.0;
    B(i, 1) = eta[static_cast<std::size_t>(i)];
  }
  SupportSet support;
  support.sigma = Matrix::Identity(2, 2);
  support.points = {(Vector(2) << 1.0, -4.0).finished(), (Vector(2) << 1.0, 6.0).finished()};
  SimOutput out = assemble(std::move(B), std::vector<Index>(static_cast<std::size_t>(n), -1), std::move(support),
                           sigma_noise, seed, SimOptions{});
  out.dataset.time_ordered = true;
  return out;
}

}  // namespace maximin
