#include "sdm/flist.hpp"

#include <algorithm>

#include "sdm/errors.hpp"
#include "sdm/parallel.hpp"

namespace sdm {

ItemTallies tally_items(std::span<const Transaction> transactions,
                        int partitions, int workers) {
  if (partitions < 1) throw ConfigError("partitions must be at least 1");
  std::size_t n = transactions.size();
  std::size_t chunks = std::min<std::size_t>(partitions, std::max<std::size_t>(n, 1));

  std::vector<ItemTallies> partial(chunks);
  parallel_for(chunks, workers, [&](std::size_t c) {
    std::size_t begin = n * c / chunks;
    std::size_t end = n * (c + 1) / chunks;
    ItemTallies& t = partial[c];
    for (std::size_t i = begin; i < end; ++i) {
      const Transaction& tx = transactions[i];
      for (ItemId id : tx.items) {
        if (id >= t.freq.size()) t.freq.resize(id + 1, 0);
        ++t.freq[id];
      }
      ++t.target_totals[static_cast<std::size_t>(tx.target)];
      ++t.transactions;
    }
  });

  ItemTallies total;
  for (const ItemTallies& t : partial) {
    if (t.freq.size() > total.freq.size()) total.freq.resize(t.freq.size(), 0);
    for (std::size_t id = 0; id < t.freq.size(); ++id)
      total.freq[id] += t.freq[id];
    for (std::size_t k = 0; k < kNumCategories; ++k)
      total.target_totals[k] += t.target_totals[k];
    total.transactions += t.transactions;
  }
  return total;
}

FList sort_flist(const ItemTallies& tallies) {
  FList f;
  f.target_totals = tallies.target_totals;
  for (std::size_t id = 0; id < tallies.freq.size(); ++id)
    if (tallies.freq[id] > 0)
      f.entries.emplace_back(static_cast<ItemId>(id), tallies.freq[id]);
  std::sort(f.entries.begin(), f.entries.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  f.rank_.assign(tallies.freq.size(), FList::kNoRank);
  for (std::size_t r = 0; r < f.entries.size(); ++r)
    f.rank_[f.entries[r].first] = static_cast<std::uint32_t>(r);
  return f;
}

FList count_items(std::span<const Transaction> transactions, int partitions,
                  int workers) {
  return sort_flist(tally_items(transactions, partitions, workers));
}

}  // namespace sdm
