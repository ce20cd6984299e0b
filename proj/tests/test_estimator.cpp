#include "helpers.hpp"
#include "maximin/error.hpp"
#include "maximin/estimator.hpp"
#include "maximin/grouping.hpp"
#include "maximin/oracle.hpp"
#include "maximin/rng.hpp"
#include "maximin/simulate.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace maximin;
using namespace testing_helpers;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

Dataset gaussian_dataset(std::mt19937_64& gen, Index n, const Vector& b, double noise) {
  Dataset d;
  d.X.resize(n, b.size());
  std::normal_distribution<double> nd;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < b.size(); ++j) d.X(i, j) = nd(gen);
  d.Y = d.X * b;
  for (Index i = 0; i < n; ++i) d.Y(i) += noise * nd(gen);
  return d;
}

// Objective of the weighted problem, for KKT-free optimality checks.
double weighted_objective(const Matrix& A, const Vector& c, double lambda, Norm q, const Vector& beta) {
  return beta.dot(A * beta) - 2.0 * c.dot(beta) + lambda * norm(beta, q);
}

}  // namespace

TEST(UpdateWeights, Examples) {
  const WeightState u = update_weights(vec({1, 1}), 0.3, 1e-6);
  EXPECT_NEAR(u.group_weights(0), 0.5, 1e-15);
  EXPECT_NEAR(u.group_weights(1), 0.5, 1e-15);

  const WeightState w = update_weights(vec({1, 4}), 0.01, 1e-6);
  EXPECT_NEAR(w.group_weights(1) / w.group_weights(0), std::pow(4.0, -0.99), 1e-12);
  EXPECT_NEAR(std::pow(4.0, -0.99), 0.2535, 5e-5);

  const WeightState c = update_weights(vec({-0.5, 1}), 0.01, 1e-6);
  EXPECT_NEAR(c.group_weights(0) / c.group_weights(1), std::pow(1e-6, -0.99), 1e-3 * std::pow(1e-6, -0.99));
  EXPECT_GT(c.group_weights(0), 0.99);
}

TEST(UpdateWeights, ObservationWeightsConstantWithinGroups) {
  GroupSpec spec{{{0, 1, 2}, {3, 4}}, Sampling::partition};
  const WeightState w = update_weights(vec({1, 2}), 0.01, 1e-6);
  const Vector obs = w.observation_weights(spec, 5);
  EXPECT_NEAR(obs.sum(), 1.0, 1e-14);
  EXPECT_DOUBLE_EQ(obs(0), obs(2));
  EXPECT_DOUBLE_EQ(obs(3), obs(4));
}

TEST(SolveWeighted, LassoMatchesPerturbationOptimality) {
  std::mt19937_64 gen(5);
  for (int t = 0; t < 50; ++t) {
    const Matrix A = random_spd(gen, 4);
    const Vector c = random_vector(gen, 4);
    for (Norm q : {Norm::L1, Norm::L2}) {
      const double lambda = 0.5 * (t % 5);
      const Vector beta = solve_weighted(A, c, lambda, q, Vector(), 1e-13);
      const double f0 = weighted_objective(A, c, lambda, q, beta);
      for (int k = 0; k < 40; ++k) {
        const Vector probe = beta + 1e-3 * random_vector(gen, 4);
        EXPECT_GE(weighted_objective(A, c, lambda, q, probe), f0 - 1e-10);
      }
    }
  }
}

TEST(SolveWeighted, ZeroAboveThreshold) {
  const Matrix A = Matrix::Identity(2, 2);
  const Vector c = vec({1.0, -0.5});
  EXPECT_EQ(solve_weighted(A, c, 2.0, Norm::L1, Vector(), 1e-12).norm(), 0.0);
  EXPECT_EQ(solve_weighted(A, c, 2.0 * c.norm(), Norm::L2, Vector(), 1e-12).norm(), 0.0);
  EXPECT_GT(solve_weighted(A, c, 1.9, Norm::L1, Vector(), 1e-12).norm(), 0.0);
}

TEST(FitReweighted, SingleGroupUnpenalizedL2IsLeastSquares) {
  std::mt19937_64 gen(1);
  const Dataset d = gaussian_dataset(gen, 200, vec({1.0, -2.0, 0.5}), 0.3);
  PenaltyConfig cfg;
  cfg.q = Norm::L2;
  const MaximinFit f = fit_reweighted(d, consecutive_blocks(200, 1), cfg);
  const Vector ols = (d.X.transpose() * d.X).ldlt().solve(d.X.transpose() * d.Y);
  EXPECT_LT((f.beta - ols).norm(), 1e-10);
  EXPECT_TRUE(f.converged);
  EXPECT_EQ(f.group_V.size(), 1);
}

TEST(FitReweighted, NoiselessSingleGroupInterpolates) {
  std::mt19937_64 gen(2);
  const Vector b = vec({0.3, -1.1, 2.0, 0.0});
  const Dataset d = gaussian_dataset(gen, 50, b, 0.0);
  const MaximinFit f = fit_reweighted(d, consecutive_blocks(50, 1), PenaltyConfig{});
  EXPECT_LT((f.beta - b).norm(), 1e-8);
}

TEST(FitReweighted, TwoRegimeSetup) {
  const SimOutput sim = gen_figure2(20000, 11);
  const MaximinFit f = fit_reweighted(sim.dataset, consecutive_blocks(20000, 40), PenaltyConfig{});
  EXPECT_TRUE(f.converged);
  EXPECT_LT((f.beta - maximin_effect(sim.support)).norm(), 0.1);
}

TEST(FitReweighted, ConstrainedModeHitsKappa) {
  const SimOutput sim = gen_figure2(4000, 3);
  const GroupSpec spec = consecutive_blocks(4000, 10);
  for (Norm q : {Norm::L1, Norm::L2}) {
    for (bool refine : {false, true}) {
      PenaltyConfig cfg;
      cfg.q = q;
      cfg.refine = refine;
      cfg.mode = Constrained{0.5};
      const MaximinFit f = fit_reweighted(sim.dataset, spec, cfg);
      EXPECT_NEAR(norm(f.beta, q), 0.5, 5e-3);
      EXPECT_GT(f.lambda, 0.0);
    }
  }
}

TEST(FitReweighted, ExactModeHasZeroGap) {
  std::mt19937_64 gen(3);
  Dataset d;
  GroupSpec spec;
  const std::vector<Vector> bs = {vec({1, 1, 0}), vec({1, -1, 0}), vec({2, 0, 1})};
  d.X.resize(600, 3);
  d.Y.resize(600);
  for (int g = 0; g < 3; ++g) {
    const Dataset part = gaussian_dataset(gen, 200, bs[static_cast<std::size_t>(g)], 0.1);
    d.X.middleRows(200 * g, 200) = part.X;
    d.Y.segment(200 * g, 200) = part.Y;
    std::vector<Index> ids(200);
    std::iota(ids.begin(), ids.end(), 200 * g);
    spec.groups.push_back(ids);
  }
  PenaltyConfig cfg;
  cfg.refine = true;
  const MaximinFit f = fit_reweighted(d, spec, cfg);
  EXPECT_TRUE(f.converged);
  EXPECT_LT(f.duality_gap, 1e-6);
  // Two active groups share the worst explained variance.
  std::vector<double> v(f.group_V.data(), f.group_V.data() + 3);
  std::sort(v.begin(), v.end());
  EXPECT_NEAR(v[0], v[1], 1e-6);
}

TEST(FitReweighted, AllGroupsNonpositive) {
  std::mt19937_64 gen(4);
  const Dataset a = gaussian_dataset(gen, 300, vec({1.0}), 0.0);
  const Dataset b = gaussian_dataset(gen, 300, vec({-1.0}), 0.0);
  Dataset d;
  d.X.resize(600, 1);
  d.X << a.X, b.X;
  d.Y.resize(600);
  d.Y << a.Y, b.Y;
  PenaltyConfig cfg;
  cfg.refine = true;
  try {
    fit_reweighted(d, consecutive_blocks(600, 2), cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AllGroupsNonpositive);
  }
}

TEST(FitReweighted, RejectsMaximalMode) {
  std::mt19937_64 gen(5);
  const Dataset d = gaussian_dataset(gen, 20, vec({1.0}), 0.0);
  PenaltyConfig cfg;
  cfg.mode = Maximal{};
  EXPECT_THROW(fit_reweighted(d, consecutive_blocks(20, 2), cfg), Error);
}

TEST(MaximalPenalty, Examples) {
  PenaltyConfig cfg;
  cfg.mode = Maximal{};
  EXPECT_LT((fit_maximal_penalty({vec({2, 0})}, cfg) - vec({0.5, 0})).norm(), 1e-9);
  EXPECT_LT((fit_maximal_penalty({vec({1, 0}), vec({0, 1})}, cfg) - vec({1, 1})).norm(), 1e-9);
  try {
    fit_maximal_penalty({vec({1}), vec({-1})}, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Infeasible);
  }
}

TEST(MaximalPenalty, L2VariantSatisfiesConstraints) {
  std::mt19937_64 gen(6);
  for (int t = 0; t < 100; ++t) {
    std::vector<Vector> c;
    for (int g = 0; g < 3; ++g) {
      Vector v = random_vector(gen, 4);
      v(0) = 2.0 + std::abs(v(0));
      c.push_back(v);
    }
    const Vector beta = maximal_penalty_direction(c, Norm::L2).beta;
    double tightest = 1e300;
    for (const Vector& v : c) tightest = std::min(tightest, beta.dot(v));
    EXPECT_NEAR(tightest, 1.0, 1e-6);
    // No shorter feasible point along random perturbations.
    for (int k = 0; k < 20; ++k) {
      const Vector probe = beta + 1e-2 * random_vector(gen, 4);
      double m = 1e300;
      for (const Vector& v : c) m = std::min(m, probe.dot(v));
      if (m >= 1.0) EXPECT_GE(probe.norm(), beta.norm() - 1e-9);
    }
  }
}

TEST(Rescale, Examples) {
  const std::vector<double> a1{1.0}, q1{1.0};
  EXPECT_NEAR(rescale(a1, q1), 1.0, 1e-9);
  const std::vector<double> a2{1.0, 1.0}, q2{1.0, 2.0};
  const double s = rescale(a2, q2);
  EXPECT_NEAR(s, 0.5, 1e-9);
  EXPECT_NEAR(std::min(2 * s - s * s, 2 * s - 2 * s * s), 0.5, 1e-12);
  const std::vector<double> a3{-1.0, 0.0}, q3{1.0, 1.0};
  EXPECT_EQ(rescale(a3, q3), 0.0);
}

TEST(FitMaximal, ScaleAndLambda) {
  std::mt19937_64 gen(8);
  Dataset d;
  d.X.resize(400, 3);
  d.Y.resize(400);
  const Dataset a = gaussian_dataset(gen, 200, vec({1.0, 0.5, 0.0}), 0.0);
  const Dataset b = gaussian_dataset(gen, 200, vec({1.0, -0.5, 0.2}), 0.0);
  d.X << a.X, b.X;
  d.Y << a.Y, b.Y;
  PenaltyConfig cfg;
  cfg.mode = Maximal{};
  const MaximinFit f = fit(d, consecutive_blocks(400, 2), cfg);
  EXPECT_GT(f.scale, 0.0);
  EXPECT_TRUE(f.converged);
  EXPECT_NEAR(f.lambda, 2.0 / f.beta.lpNorm<1>(), 1e-12);
  const auto moments = group_moments(d, consecutive_blocks(400, 2));
  for (const auto& m : moments) EXPECT_GE(f.beta.dot(m.cross), 1.0 - 1e-8);
}

TEST(PowerMean, ObjectiveNondecreasing) {
  const SimOutput sim = gen_figure2(4000, 5);
  const auto moments = group_moments(sim.dataset, consecutive_blocks(4000, 20));
  const PowerMeanPath path = power_mean_reweighting(moments, Norm::L1, 0.05, 0.01, 50, 1e-10);
  ASSERT_GE(path.objective.size(), 2u);
  for (std::size_t k = 1; k < path.objective.size(); ++k) {
    EXPECT_GE(path.objective[k], path.objective[k - 1] - 1e-10);
  }
  EXPECT_TRUE(path.converged);
}
