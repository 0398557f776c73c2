#pragma once

// Small random course datasets for property tests. Sized to stay within
// the reference enumerator's limits. The generator avoids std::*
// distributions so a seed means the same dataset everywhere.

#include <cstdint>
#include <string>
#include <vector>

#include "sdm/dataset.hpp"
#include "sdm/items.hpp"

namespace gen {

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {  // splitmix64
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    return lo + below(hi - lo + 1);
  }
  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return real01() < p; }
};

struct GenDataset {
  sdm::ItemDictionary dict;
  sdm::CourseDataset dataset;
};

inline GenDataset random_course_dataset(Rng& rng,
                                        const std::string& course_id = "c0") {
  GenDataset g;
  g.dataset.course_id = course_id;

  std::size_t attrs = rng.between(2, 5);
  std::vector<std::vector<sdm::ItemId>> values(attrs);
  std::size_t total_items = 0;
  for (std::size_t a = 0; a < attrs; ++a) {
    std::size_t n = rng.between(2, 4);
    if (total_items + n > 20) n = 2;
    for (std::size_t v = 0; v < n; ++v)
      values[a].push_back(
          g.dict.intern("a" + std::to_string(a), "v" + std::to_string(v)));
    total_items += n;
  }

  std::size_t categories = rng.between(2, 4);
  std::size_t rows = rng.between(20, 300);
  double present = 0.6 + 0.35 * rng.real01();
  for (std::size_t r = 0; r < rows; ++r) {
    sdm::Transaction t;
    for (std::size_t a = 0; a < attrs; ++a)
      if (rng.chance(present))
        t.items.push_back(values[a][rng.below(values[a].size())]);
    // items are ascending already: attributes intern in order
    t.target = static_cast<sdm::Category>(rng.below(categories));
    ++g.dataset.target_totals[static_cast<std::size_t>(t.target)];
    g.dataset.transactions.push_back(std::move(t));
  }
  return g;
}

}  // namespace gen
