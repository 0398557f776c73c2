#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sdm {

// One raw row. Typed fields cover the columns the pipeline consumes; any
// other column travels untouched in `extras` (raw cell text, keyed by the
// current column name) so tables can be dumped back out losslessly.
struct RawRecord {
  bool registered = false;
  bool viewed = false;
  bool explored = false;
  bool certified = false;
  std::optional<std::string> country;
  std::optional<std::string> level_of_education;
  std::optional<int> year_of_birth;
  std::optional<std::string> gender;
  std::optional<double> grade;  // in [0, 1]
  std::optional<std::int64_t> nevents;
  std::optional<std::int64_t> ndays_act;
  std::optional<std::int64_t> nplay_video;
  std::optional<std::int64_t> nchapters;
  std::optional<std::int64_t> nforum_posts;
  std::vector<std::pair<std::string, std::string>> extras;

  bool operator==(const RawRecord&) const = default;
};

// All rows of one course, in file order. `column_names` tracks the current
// header (it shrinks and gets renamed as columns are dropped or renamed).
struct RawCourseTable {
  std::string course_id;
  std::vector<std::string> column_names;
  std::vector<RawRecord> rows;

  bool operator==(const RawCourseTable&) const = default;
};

}  // namespace sdm
