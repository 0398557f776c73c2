#pragma once

#include <map>
#include <string>
#include <vector>

#include "sdm/category.hpp"
#include "sdm/items.hpp"

namespace sdm {

// One prepared row: interned item ids sorted ascending, at most one item per
// attribute, plus the derived category.
struct Transaction {
  std::vector<ItemId> items;
  Category target;
  bool operator==(const Transaction&) const = default;
};

// A fully prepared course: transactions in file order plus the audit trail
// of what preparation produced.
struct CourseDataset {
  std::string course_id;
  std::vector<Transaction> transactions;
  TargetCounts target_totals{};
  // Attribute -> equal-width bin edges fitted on this course's values.
  std::map<std::string, std::vector<double>> bin_edges;

  std::size_t rows() const { return transactions.size(); }
  bool operator==(const CourseDataset&) const = default;
};

}  // namespace sdm
