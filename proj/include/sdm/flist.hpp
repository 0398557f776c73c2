#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sdm/dataset.hpp"

namespace sdm {

// Raw per-item occurrence counts plus category totals, produced by the
// counting pass. `freq` is indexed by item id (0 for unseen ids).
struct ItemTallies {
  std::vector<std::uint64_t> freq;
  TargetCounts target_totals{};
  std::uint64_t transactions = 0;
};

// Frequency-ordered item list driving projection and tree building.
struct FList {
  static constexpr std::uint32_t kNoRank = 0xffffffffu;

  // (item, frequency), frequency descending, ties by ascending item id.
  std::vector<std::pair<ItemId, std::uint64_t>> entries;
  TargetCounts target_totals{};
  std::vector<std::uint32_t> rank_;  // by item id; kNoRank if absent

  std::uint32_t rank_of(ItemId id) const {
    return id < rank_.size() ? rank_[id] : kNoRank;
  }
};

// Counts item occurrences by splitting `transactions` into `partitions`
// contiguous chunks, tallying each independently, and adding the chunk
// tallies together in chunk order. The split never changes the result;
// `workers` only sets how many chunks run at once.
ItemTallies tally_items(std::span<const Transaction> transactions,
                        int partitions, int workers = 1);

// Orders raw tallies into an FList, dropping zero-frequency ids.
FList sort_flist(const ItemTallies& tallies);

FList count_items(std::span<const Transaction> transactions, int partitions,
                  int workers = 1);

}  // namespace sdm
