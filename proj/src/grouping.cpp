#include "maximin/grouping.hpp"

#include "maximin/error.hpp"
#include "maximin/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <unordered_set>

namespace maximin {
namespace {

// Floyd's algorithm: m distinct values from [0, n), returned sorted.
std::vector<Index> sample_distinct(Index n, Index m, CounterRng& rng) {
  std::unordered_set<Index> chosen;
  chosen.reserve(static_cast<std::size_t>(m) * 2);
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(m));
  for (Index j = n - m; j < n; ++j) {
    const auto t = static_cast<Index>(rng.below(static_cast<std::uint64_t>(j + 1)));
    const Index pick = chosen.insert(t).second ? t : j;
    if (pick == j) chosen.insert(j);
    out.push_back(pick);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Ceiling that ignores rounding noise in the last few ulps.
Index robust_ceil(double x) {
  return static_cast<Index>(std::ceil(x * (1.0 - 1e-12)));
}

}  // namespace

GroupSpec groups_from_labels(std::span<const long long> labels) {
  std::map<long long, std::vector<Index>> by_label;
  for (std::size_t i = 0; i < labels.size(); ++i) by_label[labels[i]].push_back(static_cast<Index>(i));
  GroupSpec spec;
  spec.sampling = Sampling::partition;
  for (auto& [label, idx] : by_label) spec.groups.push_back(std::move(idx));
  return spec;
}

GroupSpec consecutive_blocks(Index n, Index G) {
  if (G < 1 || G > n) {
    throw Error(ErrorCode::InvalidSize, "block count " + std::to_string(G) + " must lie in [1, " +
                                            std::to_string(n) + "]");
  }
  GroupSpec spec;
  spec.sampling = Sampling::partition;
  const Index base = n / G;
  const Index extra = n % G;
  Index start = 0;
  for (Index g = 0; g < G; ++g) {
    const Index len = base + (g < extra ? 1 : 0);
    std::vector<Index> block(static_cast<std::size_t>(len));
    std::iota(block.begin(), block.end(), start);
    spec.groups.push_back(std::move(block));
    start += len;
  }
  return spec;
}

GroupSpec sample_groups(Index n, Index G, Index m, bool replacement, std::uint64_t seed) {
  if (n < 1 || G < 1 || m < 1 || m > n) {
    throw Error(ErrorCode::InvalidSize, "need 1 <= m <= n and G >= 1 (n=" + std::to_string(n) +
                                            ", G=" + std::to_string(G) + ", m=" + std::to_string(m) + ")");
  }
  GroupSpec spec;
  CounterRng rng(seed);
  if (replacement) {
    spec.sampling = Sampling::with_replacement;
    for (Index g = 0; g < G; ++g) {
      CounterRng stream = rng.split(static_cast<std::uint64_t>(g));
      spec.groups.push_back(sample_distinct(n, m, stream));
    }
    return spec;
  }
  if (G * m > n) {
    throw Error(ErrorCode::InvalidSize, "disjoint groups need G*m <= n (G*m=" + std::to_string(G * m) +
                                            ", n=" + std::to_string(n) + ")");
  }
  spec.sampling = Sampling::partition;
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  // Partial Fisher-Yates over the first G*m slots.
  for (Index i = 0; i < G * m; ++i) {
    const auto j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  for (Index g = 0; g < G; ++g) {
    std::vector<Index> group(perm.begin() + g * m, perm.begin() + (g + 1) * m);
    std::sort(group.begin(), group.end());
    spec.groups.push_back(std::move(group));
  }
  return spec;
}

Index groups_needed_contamination(double epsilon, Index m, double gamma) {
  if (!(epsilon >= 0.0 && epsilon < 1.0) || !(gamma > 0.0 && gamma < 1.0) || m < 1) {
    throw Error(ErrorCode::InvalidArgument, "need 0 <= epsilon < 1, 0 < gamma < 1, m >= 1");
  }
  const double clean = std::exp(static_cast<double>(m) * std::log1p(-epsilon));
  if (clean == 0.0) {
    throw Error(ErrorCode::DegenerateBound, "(1-epsilon)^m underflows to zero");
  }
  if (clean >= 1.0) return 1;
  const double bound = std::log(1.0 / gamma) / -std::log1p(-clean);
  return std::max<Index>(1, robust_ceil(bound));
}

JumpGroupCount groups_needed_jump(Index n, double delta, Index J, double gamma) {
  if (n < 1 || J < 1 || !(delta >= 0.0 && delta < 1.0) || !(gamma > 0.0 && gamma < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "need n >= 1, J >= 1, 0 <= delta < 1, 0 < gamma < 1");
  }
  JumpGroupCount out;
  const double bound = 4.0 * static_cast<double>(n) * delta * static_cast<double>(J) / gamma;
  out.G = std::max<Index>(1, robust_ceil(bound));
  const double lhs = delta * static_cast<double>(n - 1) / static_cast<double>(J);
  const double rhs = 1.0 / std::log(2.0 * static_cast<double>(J) / gamma);
  out.feasible = delta > 0.0 && lhs >= rhs;
  return out;
}

bool pareto_holds(std::span<const Index> assignments, const GroupSpec& spec, const std::set<Index>& essential_ids) {
  std::set<Index> covered;
  for (const auto& group : spec.groups) {
    if (group.empty()) continue;
    const Index id = assignments[static_cast<std::size_t>(group.front())];
    const bool pure = std::all_of(group.begin(), group.end(), [&](Index i) {
      return assignments[static_cast<std::size_t>(i)] == id;
    });
    if (pure) covered.insert(id);
  }
  return std::includes(covered.begin(), covered.end(), essential_ids.begin(), essential_ids.end());
}

}  // namespace maximin
