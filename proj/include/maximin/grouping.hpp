#pragma once

#include "maximin/model.hpp"

#include <cstdint>
#include <set>
#include <span>
#include <vector>

namespace maximin {

// Partition by label value: groups ordered by ascending label, indices in
// original order within each group.
GroupSpec groups_from_labels(std::span<const long long> labels);

// G contiguous blocks; the first n mod G blocks hold one extra observation.
GroupSpec consecutive_blocks(Index n, Index G);

// G groups of m distinct indices each. With replacement the groups are drawn
// independently and may overlap; without it they are disjoint pieces of one
// random permutation (needs G*m <= n). Throws InvalidSize.
GroupSpec sample_groups(Index n, Index G, Index m, bool replacement, std::uint64_t seed);

// ceil(log(1/gamma) / -log(1 - (1-eps)^m)), at least 1. Throws DegenerateBound
// when (1-eps)^m underflows to zero.
Index groups_needed_contamination(double epsilon, Index m, double gamma);

struct JumpGroupCount {
  Index G = 1;
  bool feasible = false;
};

// G = ceil(4 n delta J / gamma) (at least 1); feasible iff
// delta (n-1) / J >= 1 / log(2J/gamma).
JumpGroupCount groups_needed_jump(Index n, double delta, Index J, double gamma);

// True iff every essential id owns at least one group whose observations all
// carry that id.
bool pareto_holds(std::span<const Index> assignments, const GroupSpec& spec, const std::set<Index>& essential_ids);

}  // namespace maximin
