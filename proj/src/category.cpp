#include "sdm/category.hpp"

#include "sdm/errors.hpp"

namespace sdm {

namespace {
const std::array<std::string, kNumCategories> kNames = {
    "certified", "onlyexplored", "onlyviewed", "onlyregistered"};
const std::array<std::string, kNumCategories> kLabels = {
    "certified=True", "onlyexplored=True", "onlyviewed=True",
    "onlyregistered=True"};
}  // namespace

const std::string& category_name(Category c) {
  return kNames[static_cast<std::size_t>(c)];
}

const std::string& category_label(Category c) {
  return kLabels[static_cast<std::size_t>(c)];
}

Category parse_category(const std::string& name) {
  for (Category c : kAllCategories)
    if (name == category_name(c)) return c;
  throw ConfigError("unknown target category: " + name);
}

Category derive_category(bool registered, bool viewed, bool explored,
                         bool certified) {
  if (!registered)
    throw DataError("record is not registered; cannot assign a category");
  if (certified) return Category::Certified;
  if (explored) return Category::OnlyExplored;
  if (viewed) return Category::OnlyViewed;
  return Category::OnlyRegistered;
}

}  // namespace sdm
