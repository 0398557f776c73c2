#include "sdm/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

#include "sdm/errors.hpp"

namespace sdm {

namespace {

constexpr std::size_t kMaxDistinctItems = 24;
constexpr std::size_t kMaxTransactions = 10000;

bool proper_subset(const std::vector<ItemId>& small,
                   const std::vector<ItemId>& big) {
  return small.size() < big.size() &&
         std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Confidence identical to the reported measure; kept local so the oracle
// does not borrow even one-liners from the engine.
double conf(const CourseMeasure& m) {
  return static_cast<double>(m.joint) / static_cast<double>(m.ant_total);
}

bool dominates_per_course(const Rule& general, const Rule& specific) {
  for (const auto& [course, m] : specific.per_course) {
    auto it = std::find_if(
        general.per_course.begin(), general.per_course.end(),
        [&](const auto& entry) { return entry.first == course; });
    if (it == general.per_course.end()) return false;
    if (conf(it->second) < conf(m)) return false;
  }
  return true;
}

}  // namespace

std::array<std::vector<ScoredRule>, kNumCategories> enumerate_subgroups(
    const CourseDataset& dataset, const ItemDictionary& dict,
    const OracleConfig& cfg) {
  if (cfg.max_antecedent < 1)
    throw ConfigError("max_antecedent must be at least 1");

  std::vector<ItemId> items;
  for (const Transaction& t : dataset.transactions)
    items.insert(items.end(), t.items.begin(), t.items.end());
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());

  if (items.size() > kMaxDistinctItems)
    throw ConfigError("reference enumeration handles at most " +
                      std::to_string(kMaxDistinctItems) + " distinct items, got " +
                      std::to_string(items.size()));
  if (dataset.transactions.size() > kMaxTransactions)
    throw ConfigError("reference enumeration handles at most " +
                      std::to_string(kMaxTransactions) + " transactions, got " +
                      std::to_string(dataset.transactions.size()));

  std::map<ItemId, int> bit_of;
  for (std::size_t i = 0; i < items.size(); ++i)
    bit_of[items[i]] = static_cast<int>(i);

  // One attribute index per distinct item, to skip same-attribute combos.
  std::map<std::string, int> attr_index;
  std::vector<int> attr_of(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string& a = dict.attribute_of(items[i]);
    attr_of[i] = attr_index.try_emplace(a, static_cast<int>(attr_index.size()))
                     .first->second;
  }

  std::vector<std::uint64_t> masks;
  masks.reserve(dataset.transactions.size());
  std::vector<Category> row_targets;
  row_targets.reserve(dataset.transactions.size());
  for (const Transaction& t : dataset.transactions) {
    std::uint64_t m = 0;
    for (ItemId id : t.items) m |= std::uint64_t{1} << bit_of.at(id);
    masks.push_back(m);
    row_targets.push_back(t.target);
  }

  std::array<std::vector<ScoredRule>, kNumCategories> out;
  std::vector<std::size_t> chosen;

  auto count_and_emit = [&](std::uint64_t mask) {
    std::uint64_t ant_total = 0;
    TargetCounts joint{};
    for (std::size_t r = 0; r < masks.size(); ++r) {
      if ((masks[r] & mask) == mask) {
        ++ant_total;
        ++joint[static_cast<std::size_t>(row_targets[r])];
      }
    }
    if (ant_total == 0) return;  // confidence undefined, nothing to report
    for (Category target : cfg.targets) {
      std::size_t ti = static_cast<std::size_t>(target);
      std::uint64_t target_total = dataset.target_totals[ti];
      if (target_total == 0) continue;
      if (!ratio_at_least(joint[ti], target_total, cfg.min_support_target))
        continue;
      if (!ratio_at_least(joint[ti], ant_total, cfg.min_confidence)) continue;
      ScoredRule rule;
      rule.antecedent.reserve(chosen.size());
      for (std::size_t i : chosen) rule.antecedent.push_back(items[i]);
      rule.target = target;
      rule.joint = joint[ti];
      rule.ant_total = ant_total;
      rule.target_total = target_total;
      out[ti].push_back(std::move(rule));
    }
  };

  auto extend = [&](auto&& self, std::size_t start, std::uint64_t mask,
                    std::uint64_t attr_mask) -> void {
    for (std::size_t i = start; i < items.size(); ++i) {
      std::uint64_t abit = std::uint64_t{1} << attr_of[i];
      if (attr_mask & abit) continue;
      chosen.push_back(i);
      std::uint64_t next = mask | (std::uint64_t{1} << i);
      count_and_emit(next);
      if (chosen.size() < static_cast<std::size_t>(cfg.max_antecedent))
        self(self, i + 1, next, attr_mask | abit);
      chosen.pop_back();
    }
  };
  extend(extend, 0, 0, 0);

  for (auto& rules : out)
    std::sort(rules.begin(), rules.end(),
              [](const ScoredRule& a, const ScoredRule& b) {
                return a.antecedent < b.antecedent;
              });
  return out;
}

std::vector<Rule> prune_redundant_reference(const std::vector<Rule>& rules,
                                            RedundancyBasis basis) {
  std::vector<Rule> kept;
  for (const Rule& r : rules) {
    bool redundant = false;
    for (const Rule& g : rules) {
      if (g.target != r.target) continue;
      if (!proper_subset(g.antecedent, r.antecedent)) continue;
      if (basis == RedundancyBasis::MeanConfidence
              ? g.mean_confidence >= r.mean_confidence
              : dominates_per_course(g, r)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) kept.push_back(r);
  }
  return kept;
}

}  // namespace sdm
