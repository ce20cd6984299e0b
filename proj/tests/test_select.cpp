#include "maximin/error.hpp"
#include "maximin/estimator.hpp"
#include "maximin/grouping.hpp"
#include "maximin/select.hpp"
#include "maximin/rng.hpp"
#include "maximin/simulate.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace maximin;

namespace {

Dataset homogeneous(Index n, std::uint64_t seed) {
  SupportSet s;
  s.sigma = Matrix::Identity(3, 3);
  Vector b(3);
  b << 1.0, -0.5, 0.25;
  s.points = {b};
  Vector w(1);
  w << 1.0;
  return gen_finite_mixture(n, s, w, 0.5, seed).dataset;
}

}  // namespace

TEST(CvGroupCount, SingletonCandidate) {
  const Dataset d = homogeneous(2000, 1);
  CvOptions opt;
  opt.splits = 5;
  EXPECT_EQ(cv_group_count(d, {3}, PenaltyConfig{}, 7, opt).G, 3);
}

TEST(CvGroupCount, ReturnsACandidateAndIsDeterministic) {
  const Dataset d = homogeneous(2000, 2);
  CvOptions opt;
  opt.splits = 10;
  const std::vector<Index> cand{2, 5, 10};
  const GroupCountSelection a = cv_group_count(d, cand, PenaltyConfig{}, 5, opt);
  const GroupCountSelection b = cv_group_count(d, cand, PenaltyConfig{}, 5, opt);
  EXPECT_NE(std::find(cand.begin(), cand.end(), a.G), cand.end());
  EXPECT_EQ(a.G, b.G);
  ASSERT_EQ(a.scores.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(a.scores[k].mean, b.scores[k].mean);
}

TEST(CvGroupCount, HomogeneousDataWithinOneStandardError) {
  const Dataset d = homogeneous(4000, 3);
  CvOptions opt;
  opt.splits = 20;
  const GroupCountSelection sel = cv_group_count(d, {2, 4, 8}, PenaltyConfig{}, 11, opt);
  const auto best = std::max_element(sel.scores.begin(), sel.scores.end(),
                                     [](const auto& a, const auto& b) { return a.mean < b.mean; });
  const auto chosen = std::find_if(sel.scores.begin(), sel.scores.end(), [&](const auto& s) { return s.G == sel.G; });
  EXPECT_GE(chosen->mean, best->mean - best->standard_error);
}

TEST(CvGroupCount, TooFewObservations) {
  const Dataset d = homogeneous(500, 4);
  try {
    cv_group_count(d, {2}, PenaltyConfig{}, 1, CvOptions{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewObservations);
  }
}

TEST(CvGroupCount, TimeOrderedSplits) {
  Dataset d = gen_figure2(4000, 3).dataset;
  CvOptions opt;
  opt.splits = 6;
  opt.min_block = 100;
  const GroupCountSelection sel = cv_group_count(d, {1, 10}, PenaltyConfig{}, 2, opt);
  EXPECT_TRUE(sel.G == 1 || sel.G == 10);
}

TEST(SelectPenalty, SingleGridValue) {
  const Dataset d = homogeneous(500, 5);
  EXPECT_DOUBLE_EQ(select_penalty(d, consecutive_blocks(500, 2), {0.3}, 1).lambda, 0.3);
}

TEST(SelectPenalty, LargePenaltyGivesZeroFit) {
  const Dataset d = homogeneous(500, 6);
  const GroupSpec spec = consecutive_blocks(500, 2);
  const double lmax = lambda_upper(group_moments(d, spec), Norm::L1);
  // The bound is computed on all rows; the training split needs headroom.
  const PenaltySelection sel = select_penalty(d, spec, {10.0 * lmax}, 1);
  EXPECT_DOUBLE_EQ(sel.lambda, 10.0 * lmax);
  EXPECT_NEAR(sel.scores[0], 0.0, 1e-12);
  PenaltyConfig cfg;
  cfg.mode = Penalized{lmax};
  cfg.refine = true;
  EXPECT_LT(fit(d, spec, cfg).beta.norm(), 1e-12);
}

TEST(SelectPenalty, NoiselessPrefersSmallLambda) {
  SupportSet s;
  s.sigma = Matrix::Identity(3, 3);
  Vector b(3);
  b << 1.0, -2.0, 0.5;
  s.points = {b};
  Vector w(1);
  w << 1.0;
  const Dataset d = gen_finite_mixture(400, s, w, 0.0, 3).dataset;
  const std::vector<double> grid{0.0, 0.1, 0.5, 1.0, 2.0, 4.0};
  const PenaltySelection sel = select_penalty(d, consecutive_blocks(400, 1), grid, 2);
  EXPECT_LE(sel.lambda, 0.1);
  for (std::size_t k = 1; k < grid.size(); ++k) EXPECT_LE(sel.scores[k], sel.scores[k - 1] + 1e-9);
}

TEST(CvGroupCount, JumpProcessBlockLength) {
  const Index n = 4000;
  const double delta = 0.01;
  std::vector<Index> candidates;
  for (Index G = 2; G <= n / 10; G *= 2) candidates.push_back(G);
  CvOptions opt;
  opt.splits = 20;
  opt.min_block = 50;
  int within = 0;
  for (int rep = 0; rep < 20; ++rep) {
    CounterRng rng(400 + static_cast<std::uint64_t>(rep));
    SupportSet s;
    s.sigma = Matrix::Identity(2, 2);
    for (int j = 0; j < 3; ++j) {
      Vector b(2);
      b << 1.0 + rng.normal(), rng.normal();
      s.points.push_back(b);
    }
    const Dataset d = gen_jump_process(n, s, delta, 0.1, 1000 + static_cast<std::uint64_t>(rep)).dataset;
    const GroupCountSelection sel = cv_group_count(d, candidates, PenaltyConfig{}, static_cast<std::uint64_t>(rep), opt);
    const double length = static_cast<double>(n) / static_cast<double>(sel.G);
    within += length >= 0.25 / delta && length <= 4.0 / delta;
  }
  EXPECT_GE(within, 14);
}
