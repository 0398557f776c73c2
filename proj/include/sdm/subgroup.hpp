#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sdm/category.hpp"
#include "sdm/items.hpp"

namespace sdm {

// One mined rule for one course, with exact counts so measures can be
// recomputed and compared without rounding.
struct ScoredRule {
  std::vector<ItemId> antecedent;  // item ids, ascending
  Category target;
  std::uint64_t joint = 0;      // rows covering antecedent and target
  std::uint64_t ant_total = 0;  // rows covering antecedent
  std::uint64_t target_total = 0;

  double support_target() const {
    return static_cast<double>(joint) / static_cast<double>(target_total);
  }
  double confidence() const {
    return static_cast<double>(joint) / static_cast<double>(ant_total);
  }
  bool operator==(const ScoredRule&) const = default;
};

struct Measures {
  double support_target = 0;
  double confidence = 0;
  bool operator==(const Measures&) const = default;
};

// Thresholds compare in double, the same arithmetic the reported measures
// use, so a rule printed as exactly the threshold value always passes.
inline bool ratio_at_least(std::uint64_t num, std::uint64_t den, double tau) {
  return static_cast<double>(num) / static_cast<double>(den) >= tau;
}

}  // namespace sdm
