#pragma once

#include <array>
#include <vector>

#include "sdm/dataset.hpp"
#include "sdm/postprocess.hpp"
#include "sdm/subgroup.hpp"

namespace sdm {

// Reference results computed the slow, obvious way: enumerate every
// antecedent and count by scanning. Exists to check the mining engine, so
// it shares data types with it but none of its algorithms.

struct OracleConfig {
  int max_antecedent = 3;
  double min_support_target = 0.0;
  double min_confidence = 0.0;
  std::vector<Category> targets{kAllCategories.begin(), kAllCategories.end()};
};

// Every antecedent of 1..max_antecedent items (at most one per attribute)
// with both measures at or above the thresholds, per target, sorted by
// antecedent. Counts by testing every transaction against every candidate
// with bitmasks, so inputs are capped: at most 24 distinct items and 10000
// transactions, refused with a ConfigError naming the sizes.
std::array<std::vector<ScoredRule>, kNumCategories> enumerate_subgroups(
    const CourseDataset& dataset, const ItemDictionary& dict,
    const OracleConfig& cfg);

// All-pairs redundancy: a rule is dropped when any strictly more general
// input rule with the same target has confidence at least as high.
std::vector<Rule> prune_redundant_reference(
    const std::vector<Rule>& rules,
    RedundancyBasis basis = RedundancyBasis::MeanConfidence);

}  // namespace sdm
