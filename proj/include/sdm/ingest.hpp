#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sdm/table.hpp"

namespace sdm {

// Columns the loader parses into typed RawRecord fields. Anything not
// matched here rides along as an extra.
enum class ColumnRole {
  CourseId,
  Registered,
  Viewed,
  Explored,
  Certified,
  Country,
  LevelOfEducation,
  YearOfBirth,
  Gender,
  Grade,
  NEvents,
  NDaysAct,
  NPlayVideo,
  NChapters,
  NForumPosts,
  Extra,
};

// Maps header names to roles. The standard schema accepts the published
// dataset's headers plus the post-rename names, so a dumped table loads
// back with the same code path.
class TableSchema {
 public:
  struct Column {
    ColumnRole role;
    std::string canonical;
    std::vector<std::string> aliases;
  };

  static const TableSchema& standard();

  explicit TableSchema(std::vector<Column> columns);
  ColumnRole role_of(const std::string& header) const;
  // Canonical names of required roles missing from `headers`.
  std::vector<std::string> missing_columns(
      const std::vector<std::string>& headers) const;

 private:
  std::vector<Column> columns_;
};

// Parses a delimited file and splits it into one table per course_id, in
// order of first appearance; rows keep file order. Throws SchemaError when
// a required column is absent and DataError (with 1-based data row index)
// on malformed cells. `source` names the input in error messages.
std::vector<RawCourseTable> load_course_tables(
    std::istream& in, const TableSchema& schema = TableSchema::standard(),
    const std::string& source = "");

// Opens and loads several files. A course_id appearing in more than one
// file is rejected: these datasets keep each course's rows together, so a
// split course means mixed-up inputs.
std::vector<RawCourseTable> load_course_files(
    const std::vector<std::string>& paths,
    const TableSchema& schema = TableSchema::standard());

// Drops identifier and timestamp columns that carry nothing for mining
// (userid_DI, start_time_DI, last_event_DI, roles) and renames
// final_cc_cname_DI -> countryName, YoB -> age. Idempotent.
RawCourseTable select_and_rename(RawCourseTable table);

// Writes the table back out as delimited text (header + rows). Numeric
// cells print in shortest round-trip form; missing cells print empty.
void write_table(const RawCourseTable& table, std::ostream& out);

}  // namespace sdm
