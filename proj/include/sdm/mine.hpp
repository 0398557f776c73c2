#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sdm/dataset.hpp"
#include "sdm/fptree.hpp"
#include "sdm/subgroup.hpp"

namespace sdm {

struct MiningConfig {
  double min_support_target = 0.01;
  double min_confidence = 0.8;  // applied later, during post-processing
  int max_antecedent = 3;
  std::vector<Category> targets{kAllCategories.begin(), kAllCategories.end()};
  // Per-target attribute allowlist; a target absent from the map may use
  // every attribute.
  std::map<Category, std::set<std::string>> attribute_allowlist;
  int partitions = 1;

  void validate() const;  // throws ConfigError
};

// An antecedent with its exact counts, before measures are applied.
struct CandidateSubgroup {
  std::vector<ItemId> antecedent;  // item ids, ascending
  std::uint64_t ant_total = 0;
  TargetCounts joint{};
  bool operator==(const CandidateSubgroup&) const = default;
};

// Reorders one transaction by descending item frequency and emits one
// instance per kept item: the prefix ending at that item, routed to that
// item's shard. Items missing from the flist are dropped.
std::vector<ShardInstance> project_transaction(const Transaction& t,
                                               const FList& flist);

// Mines every antecedent that ends at `key` in frequency order: the
// singleton {key} plus conditional extensions up to max_antecedent items.
// Candidates come out sorted by antecedent.
std::vector<CandidateSubgroup> mine_shard(const FPTree& tree, ItemId key,
                                          const MiningConfig& cfg);

// Support w.r.t. the target's row count and confidence w.r.t. the
// antecedent's. A target no transaction belongs to has no defined measures:
// nullopt, and callers drop the rule.
std::optional<Measures> score(const CandidateSubgroup& c, Category target,
                              const TargetCounts& target_totals);

struct CourseMiningResult {
  std::string course_id;
  // Indexed by Category; targets not mined stay empty.
  std::array<std::vector<ScoredRule>, kNumCategories> by_target;
  std::vector<std::string> diagnostics;
};

// Full counting + projection + per-shard mining pass over one course, once
// per requested target. Rules below min_support_target are dropped here;
// the confidence cut waits until post-processing so cross-course joins see
// every supported rule. Results are identical for any partitions/workers
// combination.
CourseMiningResult mine_course(const CourseDataset& dataset,
                               const ItemDictionary& dict,
                               const MiningConfig& cfg, int workers = 1);

}  // namespace sdm
