#include "sdm/mine.hpp"

#include <algorithm>

#include "sdm/errors.hpp"
#include "sdm/flist.hpp"
#include "sdm/parallel.hpp"

namespace sdm {

void MiningConfig::validate() const {
  if (min_support_target < 0.0 || min_support_target > 1.0)
    throw ConfigError("min_support_target must be in [0, 1]");
  if (min_confidence < 0.0 || min_confidence > 1.0)
    throw ConfigError("min_confidence must be in [0, 1]");
  if (max_antecedent < 1)
    throw ConfigError("max_antecedent must be at least 1");
  if (partitions < 1) throw ConfigError("partitions must be at least 1");
  if (targets.empty()) throw ConfigError("no target categories selected");
}

namespace {

// Shared by the single-transaction API and the bulk projection loop.
template <typename Emit>
void project_into(const Transaction& t, const FList& flist, Emit&& emit) {
  thread_local std::vector<ItemId> ordered;
  ordered.clear();
  for (ItemId id : t.items)
    if (flist.rank_of(id) != FList::kNoRank) ordered.push_back(id);
  std::sort(ordered.begin(), ordered.end(), [&](ItemId a, ItemId b) {
    return flist.rank_of(a) < flist.rank_of(b);
  });
  for (std::size_t j = 0; j < ordered.size(); ++j)
    emit(ordered[j], std::span<const ItemId>(ordered.data(), j + 1), t.target);
}

FPTree conditional_tree(const FPTree& tree, ItemId item) {
  FPTree cond;
  auto chain = tree.header().find(item);
  if (chain == tree.header().end()) return cond;
  std::vector<ItemId> path;
  for (std::uint32_t index : chain->second) {
    path.clear();
    const FPTree::Node& leaf = tree.node(index);
    for (std::uint32_t cur = leaf.parent; cur != 0; cur = tree.node(cur).parent)
      path.push_back(tree.node(cur).item);
    if (path.empty()) continue;
    std::reverse(path.begin(), path.end());
    cond.insert(path, leaf.total, leaf.per_target);
  }
  return cond;
}

void sum_chain(const FPTree& tree, const std::vector<std::uint32_t>& chain,
               std::uint64_t& total, TargetCounts& per_target) {
  total = 0;
  per_target = TargetCounts{};
  for (std::uint32_t index : chain) {
    const FPTree::Node& n = tree.node(index);
    total += n.total;
    for (std::size_t k = 0; k < kNumCategories; ++k)
      per_target[k] += n.per_target[k];
  }
}

void grow(const FPTree& tree, std::vector<ItemId>& suffix, int max_antecedent,
          std::vector<CandidateSubgroup>& out) {
  for (const auto& [item, chain] : tree.header()) {
    CandidateSubgroup c;
    sum_chain(tree, chain, c.ant_total, c.joint);
    c.antecedent = suffix;
    c.antecedent.push_back(item);
    std::sort(c.antecedent.begin(), c.antecedent.end());
    out.push_back(std::move(c));
    if (static_cast<int>(suffix.size()) + 2 <= max_antecedent) {
      FPTree cond = conditional_tree(tree, item);
      if (!cond.header().empty()) {
        suffix.push_back(item);
        grow(cond, suffix, max_antecedent, out);
        suffix.pop_back();
      }
    }
  }
}

}  // namespace

std::vector<ShardInstance> project_transaction(const Transaction& t,
                                               const FList& flist) {
  std::vector<ShardInstance> out;
  project_into(t, flist,
               [&](ItemId key, std::span<const ItemId> prefix, Category tgt) {
                 out.push_back(ShardInstance{
                     key, {prefix.begin(), prefix.end()}, tgt});
               });
  return out;
}

std::vector<CandidateSubgroup> mine_shard(const FPTree& tree, ItemId key,
                                          const MiningConfig& cfg) {
  std::vector<CandidateSubgroup> out;
  auto chain = tree.header().find(key);
  if (chain == tree.header().end()) return out;

  CandidateSubgroup single;
  sum_chain(tree, chain->second, single.ant_total, single.joint);
  single.antecedent = {key};
  out.push_back(std::move(single));

  if (cfg.max_antecedent > 1) {
    FPTree cond = conditional_tree(tree, key);
    if (!cond.header().empty()) {
      std::vector<ItemId> suffix = {key};
      grow(cond, suffix, cfg.max_antecedent, out);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const CandidateSubgroup& a, const CandidateSubgroup& b) {
              return a.antecedent < b.antecedent;
            });
  return out;
}

std::optional<Measures> score(const CandidateSubgroup& c, Category target,
                              const TargetCounts& target_totals) {
  std::uint64_t target_total = target_totals[static_cast<std::size_t>(target)];
  if (target_total == 0) return std::nullopt;
  if (c.ant_total == 0)
    throw InternalError("candidate with empty cover reached scoring");
  std::uint64_t joint = c.joint[static_cast<std::size_t>(target)];
  return Measures{
      static_cast<double>(joint) / static_cast<double>(target_total),
      static_cast<double>(joint) / static_cast<double>(c.ant_total)};
}

CourseMiningResult mine_course(const CourseDataset& dataset,
                               const ItemDictionary& dict,
                               const MiningConfig& cfg, int workers) {
  cfg.validate();
  if (workers < 1) throw ConfigError("workers must be at least 1");

  CourseMiningResult res;
  res.course_id = dataset.course_id;

  for (Category target : kAllCategories) {
    if (std::find(cfg.targets.begin(), cfg.targets.end(), target) ==
        cfg.targets.end())
      continue;
    std::size_t ti = static_cast<std::size_t>(target);
    if (dataset.target_totals[ti] == 0) {
      res.diagnostics.push_back("course '" + dataset.course_id +
                                "': no rows in category '" +
                                category_name(target) + "', target skipped");
      continue;
    }

    // Rows always stay; only items are filtered. The certified flag is
    // trivially true/false on every row of the certified category, so it is
    // dropped when describing that target; an allowlist restricts targets
    // described by a subset of attributes.
    const std::set<std::string>* allow = nullptr;
    auto allow_it = cfg.attribute_allowlist.find(target);
    if (allow_it != cfg.attribute_allowlist.end()) allow = &allow_it->second;
    bool drop_certified = (target == Category::Certified);

    std::vector<Transaction> filtered;
    std::span<const Transaction> rows(dataset.transactions);
    if (allow || drop_certified) {
      filtered.reserve(dataset.transactions.size());
      for (const Transaction& t : dataset.transactions) {
        Transaction ft;
        ft.target = t.target;
        for (ItemId id : t.items) {
          const std::string& attr = dict.attribute_of(id);
          if (drop_certified && attr == "certified") continue;
          if (allow && !allow->contains(attr)) continue;
          ft.items.push_back(id);
        }
        filtered.push_back(std::move(ft));
      }
      rows = filtered;
    }

    FList flist = count_items(rows, cfg.partitions, workers);

    std::size_t n = rows.size();
    std::size_t chunks =
        std::min<std::size_t>(cfg.partitions, std::max<std::size_t>(n, 1));
    std::vector<std::map<ItemId, std::vector<ShardInstance>>> buckets(chunks);
    parallel_for(chunks, workers, [&](std::size_t c) {
      std::size_t begin = n * c / chunks;
      std::size_t end = n * (c + 1) / chunks;
      auto& local = buckets[c];
      for (std::size_t i = begin; i < end; ++i)
        project_into(rows[i], flist,
                     [&](ItemId key, std::span<const ItemId> prefix,
                         Category tgt) {
                       local[key].push_back(ShardInstance{
                           key, {prefix.begin(), prefix.end()}, tgt});
                     });
    });

    std::vector<std::vector<CandidateSubgroup>> slots(flist.entries.size());
    parallel_for(flist.entries.size(), workers, [&](std::size_t s) {
      ItemId key = flist.entries[s].first;
      std::vector<ShardInstance> instances;
      for (std::size_t c = 0; c < chunks; ++c) {
        auto it = buckets[c].find(key);
        if (it == buckets[c].end()) continue;
        instances.insert(instances.end(), it->second.begin(),
                         it->second.end());
      }
      FPTree tree = build_local_fptree(key, instances);
      slots[s] = mine_shard(tree, key, cfg);
    });

    std::vector<ScoredRule>& rules = res.by_target[ti];
    for (const auto& slot : slots) {
      for (const CandidateSubgroup& c : slot) {
        auto m = score(c, target, dataset.target_totals);
        if (!m) continue;
        std::uint64_t joint = c.joint[ti];
        if (!ratio_at_least(joint, dataset.target_totals[ti],
                            cfg.min_support_target))
          continue;
        rules.push_back(ScoredRule{c.antecedent, target, joint, c.ant_total,
                                   dataset.target_totals[ti]});
      }
    }
    std::sort(rules.begin(), rules.end(),
              [](const ScoredRule& a, const ScoredRule& b) {
                return a.antecedent < b.antecedent;
              });
  }
  return res;
}

}  // namespace sdm
