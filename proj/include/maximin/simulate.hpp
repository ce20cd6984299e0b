#pragma once

#include "maximin/model.hpp"

#include <cstdint>
#include <vector>

namespace maximin {

enum class DesignKind { gaussian, truncated_gaussian };
enum class NoiseKind { gaussian, student_t };

struct SimOptions {
  DesignKind design = DesignKind::gaussian;
  // Truncation bound M for the truncated design: entries are i.i.d. standard
  // normals conditioned on |x| <= M, so ||X||_inf <= M.
  double bound = 1.0;
  NoiseKind noise = NoiseKind::gaussian;
  int degrees_of_freedom = 5;
};

struct SimOutput {
  Dataset dataset;
  // Index into support.points per observation; -1 when the realized
  // coefficient is not a support point (continuous coefficient draws).
  std::vector<Index> assignments;
  // Realized coefficient B_i in row i, so Y_i = X_i B_i + eps_i exactly.
  Matrix coefficients;
  SupportSet support;
  Matrix sigma_true;
  // Contaminated scenario only: (u - b*)' Sigma b* >= 0 for every contaminant.
  bool aligned = false;
};

// Variance of a standard normal conditioned on |x| <= M.
double truncated_normal_variance(double M);

SimOutput gen_finite_mixture(Index n, const SupportSet& support, const Vector& mix_weights, double sigma_noise,
                             std::uint64_t seed, const SimOptions& options = {});

// B_1 uniform over the support; afterwards B_i = B_{i-1} w.p. 1-delta, else a
// fresh uniform draw (so the total stay probability is 1 - delta + delta/J).
SimOutput gen_jump_process(Index n, const SupportSet& support, double delta, double sigma_noise, std::uint64_t seed,
                           const SimOptions& options = {});

// B_i = b* w.p. 1-epsilon, otherwise a uniform draw from the contaminant
// points. The output support lists b* first, then the contaminants.
SimOutput gen_contaminated(Index n, const Vector& b_star, const SupportSet& contaminants, double epsilon,
                           double sigma_noise, std::uint64_t seed, const SimOptions& options = {});

// Two standard normal predictors, B_i = (1, eta_i) with eta_i ~ U[-4, 6]
// sorted so eta decreases along the observations. The recorded support is
// the essential subset {(1,-4), (1,6)}.
SimOutput gen_figure2(Index n, std::uint64_t seed, double sigma_noise = 0.1);

}  // namespace maximin
