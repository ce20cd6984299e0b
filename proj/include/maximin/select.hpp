#pragma once

#include "maximin/model.hpp"

#include <cstdint>
#include <vector>

namespace maximin {

struct GroupCountScore {
  Index G = 0;
  double mean = 0.0;            // average over splits of the worst test-block V
  double standard_error = 0.0;  // of that average
};

struct GroupCountSelection {
  Index G = 0;
  std::vector<GroupCountScore> scores;  // in candidate order
};

struct CvOptions {
  int splits = 100;
  Index g_test = 5;
  Index min_block = 200;  // observations per test block
};

// Cross-validation for the number of groups. Each split fits on one half and
// scores the worst explained variance over g_test blocks of the other half.
// Picks the G with the largest mean score; ties go to the smaller G.
GroupCountSelection cv_group_count(const Dataset& dataset, const std::vector<Index>& candidates,
                                   const PenaltyConfig& config, std::uint64_t seed, const CvOptions& options = {});

struct PenaltySelection {
  double lambda = 0.0;
  std::vector<double> scores;  // in grid order
};

// Hold-out selection of lambda: a fraction of every group is held out and the
// score is the minimum hold-out V over groups. Ties go to the larger lambda.
// config supplies q, zeta and the iteration settings; its mode is ignored.
PenaltySelection select_penalty(const Dataset& dataset, const GroupSpec& spec, const std::vector<double>& grid,
                                std::uint64_t seed, const PenaltyConfig& config = {}, double holdout = 0.2);

}  // namespace maximin
