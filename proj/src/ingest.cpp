#include "sdm/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "sdm/errors.hpp"

namespace sdm {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Blank cells and the usual spreadsheet null markers mean "not recorded".
bool is_missing(const std::string& trimmed) {
  if (trimmed.empty()) return true;
  std::string l = lower(trimmed);
  return l == "na" || l == "n/a" || l == "nan" || l == "null" || l == "none";
}

// Reads one delimited record; true if a record was read. Quoted fields may
// contain commas, quotes ("" escapes) and line breaks.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  int c = in.get();
  if (c == EOF) return false;
  std::string cell;
  bool quoted = false;
  bool any = false;
  for (;;) {
    if (c == EOF) {
      fields.push_back(std::move(cell));
      return true;
    }
    any = true;
    char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        int next = in.get();
        if (next == '"') {
          cell += '"';
        } else {
          quoted = false;
          c = next;
          continue;
        }
      } else {
        cell += ch;
      }
    } else if (ch == '"' && cell.empty()) {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(cell));
      cell.clear();
    } else if (ch == '\n') {
      fields.push_back(std::move(cell));
      return true;
    } else if (ch == '\r') {
      int next = in.get();
      if (next != '\n' && next != EOF) in.unget();
      fields.push_back(std::move(cell));
      return true;
    } else {
      cell += ch;
    }
    c = in.get();
  }
  (void)any;
}

bool parse_flag(const std::string& cell, std::size_t row,
                const std::string& column) {
  std::string v = lower(trim(cell));
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  throw DataError(row, "column '" + column + "': expected a 0/1 flag, got '" +
                           trim(cell) + "'");
}

std::optional<double> parse_double(const std::string& cell, std::size_t row,
                                   const std::string& column) {
  std::string v = trim(cell);
  if (is_missing(v)) return std::nullopt;
  double out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw DataError(row, "column '" + column + "': malformed numeric '" + v +
                             "'");
  return out;
}

std::optional<std::int64_t> parse_int(const std::string& cell, std::size_t row,
                                      const std::string& column) {
  auto d = parse_double(cell, row, column);
  if (!d) return std::nullopt;
  double r = std::round(*d);
  if (std::abs(*d - r) > 1e-9 || r < -9.2e18 || r > 9.2e18)
    throw DataError(row, "column '" + column + "': expected an integer, got '" +
                             trim(cell) + "'");
  return static_cast<std::int64_t>(r);
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

bool needs_quoting(const std::string& cell) {
  return cell.find_first_of(",\"\n\r") != std::string::npos;
}

void write_cell(std::ostream& out, const std::string& cell) {
  if (!needs_quoting(cell)) {
    out << cell;
    return;
  }
  out << '"';
  for (char c : cell) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

TableSchema::TableSchema(std::vector<Column> columns)
    : columns_(std::move(columns)) {}

const TableSchema& TableSchema::standard() {
  static const TableSchema schema({
      {ColumnRole::CourseId, "course_id", {}},
      {ColumnRole::Registered, "registered", {}},
      {ColumnRole::Viewed, "viewed", {}},
      {ColumnRole::Explored, "explored", {}},
      {ColumnRole::Certified, "certified", {}},
      {ColumnRole::Country, "final_cc_cname_DI", {"countryName"}},
      {ColumnRole::LevelOfEducation, "LoE", {"LoE_DI"}},
      {ColumnRole::YearOfBirth, "YoB", {"age"}},
      {ColumnRole::Gender, "gender", {}},
      {ColumnRole::Grade, "grade", {}},
      {ColumnRole::NEvents, "nevents", {}},
      {ColumnRole::NDaysAct, "ndays_act", {}},
      {ColumnRole::NPlayVideo, "nplay_video", {}},
      {ColumnRole::NChapters, "nchapters", {}},
      {ColumnRole::NForumPosts, "nforum_posts", {}},
  });
  return schema;
}

ColumnRole TableSchema::role_of(const std::string& header) const {
  for (const Column& c : columns_) {
    if (header == c.canonical) return c.role;
    for (const std::string& a : c.aliases)
      if (header == a) return c.role;
  }
  return ColumnRole::Extra;
}

std::vector<std::string> TableSchema::missing_columns(
    const std::vector<std::string>& headers) const {
  std::vector<std::string> missing;
  for (const Column& c : columns_) {
    bool found = false;
    for (const std::string& h : headers) {
      if (h == c.canonical) found = true;
      for (const std::string& a : c.aliases)
        if (h == a) found = true;
    }
    if (!found) missing.push_back(c.canonical);
  }
  return missing;
}

std::vector<RawCourseTable> load_course_tables(std::istream& in,
                                               const TableSchema& schema,
                                               const std::string& source) {
  auto where = [&](const std::string& msg) {
    return source.empty() ? msg : msg + " (" + source + ")";
  };

  std::vector<std::string> header;
  if (!read_record(in, header))
    throw SchemaError(where("input has no header row"));
  if (!header.empty() && header[0].size() >= 3 &&
      header[0].compare(0, 3, "\xef\xbb\xbf") == 0)
    header[0] = header[0].substr(3);
  for (std::string& h : header) h = trim(h);

  auto missing = schema.missing_columns(header);
  if (!missing.empty()) {
    std::string list;
    for (const std::string& m : missing) {
      if (!list.empty()) list += ", ";
      list += m;
    }
    throw SchemaError(where("missing required column(s): " + list));
  }

  std::vector<ColumnRole> roles(header.size());
  std::map<ColumnRole, int> role_count;
  for (std::size_t i = 0; i < header.size(); ++i) {
    roles[i] = schema.role_of(header[i]);
    if (roles[i] != ColumnRole::Extra && ++role_count[roles[i]] > 1)
      throw SchemaError(where("duplicate column: " + header[i]));
  }

  std::vector<RawCourseTable> tables;
  std::map<std::string, std::size_t> course_index;

  std::vector<std::string> fields;
  std::size_t row = 0;
  while (read_record(in, fields)) {
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;  // blank line
    ++row;
    if (fields.size() != header.size())
      throw DataError(row, where("expected " + std::to_string(header.size()) +
                                 " fields, got " +
                                 std::to_string(fields.size())));
    RawRecord rec;
    std::string course;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const std::string& cell = fields[i];
      const std::string& col = header[i];
      switch (roles[i]) {
        case ColumnRole::CourseId:
          course = trim(cell);
          break;
        case ColumnRole::Registered:
          rec.registered = parse_flag(cell, row, col);
          break;
        case ColumnRole::Viewed:
          rec.viewed = parse_flag(cell, row, col);
          break;
        case ColumnRole::Explored:
          rec.explored = parse_flag(cell, row, col);
          break;
        case ColumnRole::Certified:
          rec.certified = parse_flag(cell, row, col);
          break;
        case ColumnRole::Country: {
          std::string v = trim(cell);
          if (!is_missing(v)) rec.country = v;
          break;
        }
        case ColumnRole::LevelOfEducation: {
          std::string v = trim(cell);
          if (!is_missing(v)) rec.level_of_education = v;
          break;
        }
        case ColumnRole::YearOfBirth: {
          auto v = parse_int(cell, row, col);
          if (v) rec.year_of_birth = static_cast<int>(*v);
          break;
        }
        case ColumnRole::Gender: {
          std::string v = trim(cell);
          if (!is_missing(v)) rec.gender = v;
          break;
        }
        case ColumnRole::Grade: {
          rec.grade = parse_double(cell, row, col);
          if (rec.grade && (*rec.grade < 0.0 || *rec.grade > 1.0))
            throw DataError(row, where("column 'grade': value " +
                                       format_double(*rec.grade) +
                                       " outside [0, 1]"));
          break;
        }
        case ColumnRole::NEvents:
        case ColumnRole::NDaysAct:
        case ColumnRole::NPlayVideo:
        case ColumnRole::NChapters:
        case ColumnRole::NForumPosts: {
          auto v = parse_int(cell, row, col);
          if (v && *v < 0)
            throw DataError(row, where("column '" + col +
                                       "': negative count " +
                                       std::to_string(*v)));
          if (roles[i] == ColumnRole::NEvents) rec.nevents = v;
          if (roles[i] == ColumnRole::NDaysAct) rec.ndays_act = v;
          if (roles[i] == ColumnRole::NPlayVideo) rec.nplay_video = v;
          if (roles[i] == ColumnRole::NChapters) rec.nchapters = v;
          if (roles[i] == ColumnRole::NForumPosts) rec.nforum_posts = v;
          break;
        }
        case ColumnRole::Extra:
          rec.extras.emplace_back(col, cell);
          break;
      }
    }
    if (course.empty())
      throw DataError(row, where("empty course_id"));
    auto [it, inserted] = course_index.try_emplace(course, tables.size());
    if (inserted) {
      RawCourseTable t;
      t.course_id = course;
      t.column_names = header;
      tables.push_back(std::move(t));
    }
    tables[it->second].rows.push_back(std::move(rec));
  }
  return tables;
}

std::vector<RawCourseTable> load_course_files(
    const std::vector<std::string>& paths, const TableSchema& schema) {
  std::vector<RawCourseTable> all;
  std::map<std::string, std::string> seen_in;
  for (const std::string& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open input file: " + path);
    auto tables = load_course_tables(in, schema, path);
    for (auto& t : tables) {
      auto [it, inserted] = seen_in.try_emplace(t.course_id, path);
      if (!inserted)
        throw DataError("course '" + t.course_id + "' appears in both " +
                        it->second + " and " + path +
                        "; a course must arrive in one piece");
      all.push_back(std::move(t));
    }
  }
  return all;
}

RawCourseTable select_and_rename(RawCourseTable table) {
  static const std::vector<std::string> kDrop = {
      "userid_DI", "start_time_DI", "last_event_DI", "roles"};
  static const std::map<std::string, std::string> kRename = {
      {"final_cc_cname_DI", "countryName"},
      {"YoB", "age"},
      {"LoE_DI", "LoE"},
  };

  auto dropped = [&](const std::string& name) {
    return std::find(kDrop.begin(), kDrop.end(), name) != kDrop.end();
  };

  std::erase_if(table.column_names, dropped);
  for (std::string& name : table.column_names) {
    auto it = kRename.find(name);
    if (it != kRename.end()) name = it->second;
  }
  for (RawRecord& r : table.rows)
    std::erase_if(r.extras,
                  [&](const auto& kv) { return dropped(kv.first); });
  return table;
}

void write_table(const RawCourseTable& table, std::ostream& out) {
  const TableSchema& schema = TableSchema::standard();
  for (std::size_t i = 0; i < table.column_names.size(); ++i) {
    if (i) out << ',';
    write_cell(out, table.column_names[i]);
  }
  out << '\n';
  for (const RawRecord& r : table.rows) {
    for (std::size_t i = 0; i < table.column_names.size(); ++i) {
      if (i) out << ',';
      const std::string& col = table.column_names[i];
      std::string cell;
      switch (schema.role_of(col)) {
        case ColumnRole::CourseId: cell = table.course_id; break;
        case ColumnRole::Registered: cell = r.registered ? "1" : "0"; break;
        case ColumnRole::Viewed: cell = r.viewed ? "1" : "0"; break;
        case ColumnRole::Explored: cell = r.explored ? "1" : "0"; break;
        case ColumnRole::Certified: cell = r.certified ? "1" : "0"; break;
        case ColumnRole::Country: cell = r.country.value_or(""); break;
        case ColumnRole::LevelOfEducation:
          cell = r.level_of_education.value_or("");
          break;
        case ColumnRole::YearOfBirth:
          if (r.year_of_birth) cell = std::to_string(*r.year_of_birth);
          break;
        case ColumnRole::Gender: cell = r.gender.value_or(""); break;
        case ColumnRole::Grade:
          if (r.grade) cell = format_double(*r.grade);
          break;
        case ColumnRole::NEvents:
          if (r.nevents) cell = std::to_string(*r.nevents);
          break;
        case ColumnRole::NDaysAct:
          if (r.ndays_act) cell = std::to_string(*r.ndays_act);
          break;
        case ColumnRole::NPlayVideo:
          if (r.nplay_video) cell = std::to_string(*r.nplay_video);
          break;
        case ColumnRole::NChapters:
          if (r.nchapters) cell = std::to_string(*r.nchapters);
          break;
        case ColumnRole::NForumPosts:
          if (r.nforum_posts) cell = std::to_string(*r.nforum_posts);
          break;
        case ColumnRole::Extra: {
          for (const auto& [k, v] : r.extras)
            if (k == col) {
              cell = v;
              break;
            }
          break;
        }
      }
      write_cell(out, cell);
    }
    out << '\n';
  }
}

}  // namespace sdm
