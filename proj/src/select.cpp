#include "maximin/select.hpp"

#include "maximin/error.hpp"
#include "maximin/estimator.hpp"
#include "maximin/parallel.hpp"
#include "maximin/rng.hpp"
#include "maximin/variance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace maximin {
namespace {

// Fit that treats a vanishing maximin direction as the zero vector.
Vector fit_or_zero(const std::vector<GroupMoments>& moments, const PenaltyConfig& config, Index p) {
  try {
    return fit(moments, config).coefficients();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::AllGroupsNonpositive || e.code() == ErrorCode::Infeasible) return Vector::Zero(p);
    throw;
  }
}

std::vector<std::vector<Index>> split_blocks(const std::vector<Index>& ids, Index blocks) {
  std::vector<std::vector<Index>> out(static_cast<std::size_t>(blocks));
  const auto n = static_cast<Index>(ids.size());
  const Index base = n / blocks;
  const Index extra = n % blocks;
  Index start = 0;
  for (Index b = 0; b < blocks; ++b) {
    const Index len = base + (b < extra ? 1 : 0);
    out[static_cast<std::size_t>(b)].assign(ids.begin() + start, ids.begin() + start + len);
    start += len;
  }
  return out;
}

void shuffle(std::vector<Index>& ids, CounterRng& rng) {
  for (std::size_t i = ids.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(ids[i - 1], ids[j]);
  }
}

}  // namespace

GroupCountSelection cv_group_count(const Dataset& dataset, const std::vector<Index>& candidates,
                                   const PenaltyConfig& config, std::uint64_t seed, const CvOptions& options) {
  validate(dataset);
  config.validate();
  if (candidates.empty()) throw Error(ErrorCode::InvalidArgument, "candidates: empty set");
  if (options.splits < 1) throw Error(ErrorCode::InvalidArgument, "splits must be positive");
  if (options.g_test < 1) throw Error(ErrorCode::InvalidArgument, "g_test must be positive");
  const Index n = dataset.n();
  const Index p = dataset.p();
  const Index n_train = n / 2;
  const Index n_test = n - n_train;
  if (n_test / options.g_test < std::max<Index>(options.min_block, 1)) {
    throw Error(ErrorCode::TooFewObservations,
                "test half has " + std::to_string(n_test) + " observations, fewer than g_test=" +
                    std::to_string(options.g_test) + " blocks of " + std::to_string(options.min_block));
  }
  for (Index G : candidates) {
    if (G < 1 || G > n_train) {
      throw Error(ErrorCode::TooFewObservations,
                  "candidate G=" + std::to_string(G) + " needs at least G training observations, have " +
                      std::to_string(n_train));
    }
  }

  const auto splits = static_cast<std::size_t>(options.splits);
  const std::size_t C = candidates.size();
  std::vector<double> table(splits * C, 0.0);
  const CounterRng root(seed);

  parallel_for(splits, [&](std::size_t s) {
    CounterRng rng = root.split(s);
    std::vector<Index> train;
    std::vector<Index> test;
    if (dataset.time_ordered) {
      // Alternate which side of a random cut trains.
      const Index lo = n / 4;
      const Index hi = n - n / 4;
      const Index cut = lo + static_cast<Index>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
      std::vector<Index> first(static_cast<std::size_t>(cut));
      std::vector<Index> second(static_cast<std::size_t>(n - cut));
      std::iota(first.begin(), first.end(), Index{0});
      std::iota(second.begin(), second.end(), cut);
      if (s % 2 == 0) {
        train = std::move(first);
        test = std::move(second);
      } else {
        train = std::move(second);
        test = std::move(first);
      }
    } else {
      std::vector<Index> ids(static_cast<std::size_t>(n));
      std::iota(ids.begin(), ids.end(), Index{0});
      shuffle(ids, rng);
      train.assign(ids.begin(), ids.begin() + n_train);
      test.assign(ids.begin() + n_train, ids.end());
    }
    const auto g_test = std::min<Index>(options.g_test, static_cast<Index>(test.size()));
    GroupSpec test_spec;
    test_spec.groups = split_blocks(test, g_test);
    const std::vector<GroupMoments> test_moments = group_moments(dataset, test_spec);

    for (std::size_t k = 0; k < C; ++k) {
      const Index G = std::min<Index>(candidates[k], static_cast<Index>(train.size()));
      std::vector<Index> order = train;
      if (!dataset.time_ordered) {
        CounterRng group_rng = rng.split(1000 + k);
        shuffle(order, group_rng);
      }
      GroupSpec train_spec;
      train_spec.groups = split_blocks(order, G);
      const Vector beta = fit_or_zero(group_moments(dataset, train_spec), config, p);
      table[s * C + k] = emp_explained_variances(test_moments, beta).minCoeff();
    }
  });

  GroupCountSelection out;
  for (std::size_t k = 0; k < C; ++k) {
    double mean = 0.0;
    for (std::size_t s = 0; s < splits; ++s) mean += table[s * C + k];
    mean /= static_cast<double>(splits);
    double ss = 0.0;
    for (std::size_t s = 0; s < splits; ++s) ss += (table[s * C + k] - mean) * (table[s * C + k] - mean);
    const double se = splits > 1 ? std::sqrt(ss / static_cast<double>(splits - 1) / static_cast<double>(splits)) : 0.0;
    out.scores.push_back({candidates[k], mean, se});
  }
  out.G = out.scores.front().G;
  double best = out.scores.front().mean;
  for (const auto& score : out.scores) {
    if (score.mean > best || (score.mean == best && score.G < out.G)) {
      best = score.mean;
      out.G = score.G;
    }
  }
  return out;
}

PenaltySelection select_penalty(const Dataset& dataset, const GroupSpec& spec, const std::vector<double>& grid,
                                std::uint64_t seed, const PenaltyConfig& config, double holdout) {
  validate(dataset, spec);
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "lambda grid: empty");
  if (!(holdout > 0.0 && holdout < 1.0)) throw Error(ErrorCode::InvalidArgument, "holdout must lie in (0,1)");
  const Index p = dataset.p();
  const CounterRng root(seed);

  GroupSpec fit_spec;
  fit_spec.sampling = spec.sampling;
  GroupSpec held_spec;
  held_spec.sampling = spec.sampling;
  for (std::size_t g = 0; g < spec.groups.size(); ++g) {
    std::vector<Index> ids = spec.groups[g];
    CounterRng rng = root.split(g);
    shuffle(ids, rng);
    const auto size = static_cast<Index>(ids.size());
    Index held = size >= 2 ? std::clamp<Index>(std::llround(holdout * static_cast<double>(size)), 1, size - 1) : 0;
    fit_spec.groups.emplace_back(ids.begin() + held, ids.end());
    if (held > 0) held_spec.groups.emplace_back(ids.begin(), ids.begin() + held);
  }
  const std::vector<GroupMoments> fit_moments = group_moments(dataset, fit_spec);
  // Groups too small to split are scored on their training rows.
  const std::vector<GroupMoments> score_moments =
      held_spec.groups.empty() ? fit_moments : group_moments(dataset, held_spec);

  PenaltySelection out;
  out.scores.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    if (!(grid[k] >= 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda grid values must be >= 0");
    PenaltyConfig local = config;
    local.mode = Penalized{grid[k]};
    const Vector beta = fit_or_zero(fit_moments, local, p);
    out.scores[k] = emp_explained_variances(score_moments, beta).minCoeff();
  });
  std::size_t best = 0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double tie = 1e-12 * std::max(1.0, std::abs(out.scores[best]));
    if (out.scores[k] > out.scores[best] + tie ||
        (std::abs(out.scores[k] - out.scores[best]) <= tie && grid[k] > grid[best])) {
      best = k;
    }
  }
  out.lambda = grid[best];
  return out;
}

}  // namespace maximin
