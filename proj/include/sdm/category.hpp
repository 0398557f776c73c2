#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace sdm {

// Mutually exclusive learner categories. A learner lands in the most
// advanced stage reached: certified > explored > viewed > registered.
enum class Category : std::uint8_t {
  Certified = 0,
  OnlyExplored = 1,
  OnlyViewed = 2,
  OnlyRegistered = 3,
};

inline constexpr std::size_t kNumCategories = 4;

inline constexpr std::array<Category, kNumCategories> kAllCategories = {
    Category::Certified, Category::OnlyExplored, Category::OnlyViewed,
    Category::OnlyRegistered};

// Per-category tallies, indexed by Category.
using TargetCounts = std::array<std::uint64_t, kNumCategories>;

// Lowercase identifier used in file names and keys: "certified", ...
const std::string& category_name(Category c);

// Right-hand side as printed in rule tables: "certified=True", ...
const std::string& category_label(Category c);

// Parses a category_name; throws ConfigError on anything else.
Category parse_category(const std::string& name);

// Maps a record's stage flags to its category. `registered` must be true
// for every row of these datasets; a false value is a data error, reported
// by the caller with the row index.
Category derive_category(bool registered, bool viewed, bool explored,
                         bool certified);

}  // namespace sdm
