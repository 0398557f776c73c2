#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sdm/dataset.hpp"
#include "sdm/discretize.hpp"
#include "sdm/items.hpp"
#include "sdm/table.hpp"

namespace sdm {

// How each attribute becomes items. Categorical attributes pass through
// as-is; `manual` attributes use fixed cut points; `auto_attributes` get
// per-course equal-width bins.
struct DiscretizerSpec {
  std::map<std::string, ManualCutSpec> manual;
  std::vector<std::string> auto_attributes;
  int bins = 3;
  std::vector<std::string> bin_labels = {"low", "medium", "high"};

  // age by birth-year bands (<18 ... >54), grade split at 0.5, and
  // equal-width low/medium/high for the five activity counters.
  static DiscretizerSpec defaults();

  void validate() const;  // throws ConfigError
};

// Turns a cleaned course table into transactions: categorical values and
// discretized labels become attribute=value items, the viewed/explored/
// certified flags become True/False items, and each row's category is
// derived from its stage flags. Missing values simply emit no item.
// Equal-width bins are fitted on this course's non-missing values only.
CourseDataset build_transactions(const RawCourseTable& table,
                                 const DiscretizerSpec& spec,
                                 ItemDictionary& dict);

// Audit dump: one line per transaction (category, then item ids), plus a
// JSON sidecar mapping ids to attribute=value and recording bin edges and
// category totals.
void write_course_dataset(const CourseDataset& dataset,
                          const ItemDictionary& dict, std::ostream& rows_out,
                          std::ostream& sidecar_out);

}  // namespace sdm
