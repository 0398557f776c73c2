#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "sdm/errors.hpp"
#include "sdm/prep.hpp"

using namespace sdm;

namespace {

RawRecord record() {
  RawRecord r;
  r.registered = true;
  return r;
}

RawCourseTable table_of(std::vector<RawRecord> rows,
                        const std::string& course = "c1") {
  RawCourseTable t;
  t.course_id = course;
  t.rows = std::move(rows);
  return t;
}

bool has_item(const Transaction& t, const ItemDictionary& dict,
              const std::string& attr, const std::string& value) {
  ItemId id;
  if (!dict.find(attr, value, id)) return false;
  return std::find(t.items.begin(), t.items.end(), id) != t.items.end();
}

}  // namespace

TEST_CASE("category derivation follows the stage hierarchy") {
  CHECK(derive_category(true, false, false, false) ==
        Category::OnlyRegistered);
  CHECK(derive_category(true, true, false, false) == Category::OnlyViewed);
  CHECK(derive_category(true, true, true, false) == Category::OnlyExplored);
  CHECK(derive_category(true, false, true, false) == Category::OnlyExplored);
  CHECK(derive_category(true, true, true, true) == Category::Certified);
  CHECK(derive_category(true, false, false, true) == Category::Certified);
  CHECK_THROWS_AS(derive_category(false, true, false, false), DataError);
}

TEST_CASE("birth years map to age bands with half-open intervals") {
  DiscretizerSpec spec = DiscretizerSpec::defaults();
  const ManualCutSpec& age = spec.manual.at("age");
  CHECK(discretize_manual(1931, age) == ">54");
  CHECK(discretize_manual(1962, age) == ">54");
  CHECK(discretize_manual(1963, age) == "45-54");
  CHECK(discretize_manual(1972, age) == "45-54");
  CHECK(discretize_manual(1973, age) == "35-44");
  CHECK(discretize_manual(1983, age) == "25-34");
  CHECK(discretize_manual(1992, age) == "25-34");
  CHECK(discretize_manual(1993, age) == "18-24");
  CHECK(discretize_manual(1998, age) == "18-24");
  CHECK(discretize_manual(1999, age) == "<18");
  CHECK(discretize_manual(2005, age) == "<18");
}

TEST_CASE("grades split at one half") {
  DiscretizerSpec spec = DiscretizerSpec::defaults();
  const ManualCutSpec& grade = spec.manual.at("grade");
  CHECK(discretize_manual(0.0, grade) == "low");
  CHECK(discretize_manual(0.49, grade) == "low");
  CHECK(discretize_manual(0.5, grade) == "high");
  CHECK(discretize_manual(1.0, grade) == "high");
}

TEST_CASE("malformed cut specs are rejected") {
  ManualCutSpec unordered{{5, 3}, {"a", "b", "c"}};
  CHECK_THROWS_AS(discretize_manual(1, unordered), ConfigError);
  ManualCutSpec short_labels{{1, 2}, {"a", "b"}};
  CHECK_THROWS_AS(discretize_manual(1, short_labels), ConfigError);
}

TEST_CASE("equal-width edges sit at thirds of the value range") {
  std::vector<double> v = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  auto edges = fit_equal_width(v, 3);
  REQUIRE(edges.has_value());
  CHECK(*edges == std::vector<double>{3, 6});

  std::vector<double> two = {0, 300};
  CHECK(*fit_equal_width(two, 3) == std::vector<double>{100, 200});

  CHECK_FALSE(fit_equal_width({}, 3).has_value());
}

TEST_CASE("equal-width application uses half-open bins") {
  std::vector<double> edges = {3, 6};
  CHECK(apply_equal_width(2.999, edges) == 0);
  CHECK(apply_equal_width(3, edges) == 1);
  CHECK(apply_equal_width(5.999, edges) == 1);
  CHECK(apply_equal_width(6, edges) == 2);
  CHECK(apply_equal_width(9, edges) == 2);
}

TEST_CASE("a constant column lands in the lowest bin but keeps its edges") {
  std::vector<double> v = {5, 5, 5};
  auto b = EqualWidthBinner::fit(v, 3);
  REQUIRE(b.has_value());
  CHECK(b->degenerate());
  CHECK(b->edges() == std::vector<double>{5, 5});
  CHECK(b->bin_index(5) == 0);
}

TEST_CASE("build_transactions turns records into sorted item sets") {
  RawRecord top = record();
  top.viewed = top.explored = top.certified = true;
  top.country = "Spain";
  top.level_of_education = "Master's";
  top.year_of_birth = 1984;
  top.gender = "f";
  top.grade = 0.93;
  top.nevents = 9000;
  top.ndays_act = 120;
  top.nplay_video = 300;
  top.nchapters = 18;
  top.nforum_posts = 40;

  RawRecord idle = record();  // registered only, no recorded values

  RawRecord mid = record();
  mid.viewed = true;
  mid.grade = 0.1;
  mid.year_of_birth = 1996;
  mid.nevents = 10;
  mid.ndays_act = 2;
  mid.nplay_video = 0;
  mid.nchapters = 1;
  mid.nforum_posts = 0;

  ItemDictionary dict;
  CourseDataset d =
      build_transactions(table_of({top, idle, mid}), DiscretizerSpec::defaults(),
                         dict);

  REQUIRE(d.rows() == 3);
  CHECK(d.course_id == "c1");
  CHECK(d.target_totals[static_cast<std::size_t>(Category::Certified)] == 1);
  CHECK(d.target_totals[static_cast<std::size_t>(Category::OnlyRegistered)] ==
        1);
  CHECK(d.target_totals[static_cast<std::size_t>(Category::OnlyViewed)] == 1);

  const Transaction& t0 = d.transactions[0];
  CHECK(t0.target == Category::Certified);
  CHECK(has_item(t0, dict, "countryName", "Spain"));
  CHECK(has_item(t0, dict, "LoE", "Master's"));
  CHECK(has_item(t0, dict, "age", "25-34"));
  CHECK(has_item(t0, dict, "gender", "f"));
  CHECK(has_item(t0, dict, "grade", "high"));
  CHECK(has_item(t0, dict, "nevents", "high"));
  CHECK(has_item(t0, dict, "ndays_act", "high"));
  CHECK(has_item(t0, dict, "nchapters", "high"));
  CHECK(has_item(t0, dict, "viewed", "True"));
  CHECK(has_item(t0, dict, "explored", "True"));
  CHECK(has_item(t0, dict, "certified", "True"));
  CHECK(std::is_sorted(t0.items.begin(), t0.items.end()));

  // the idle row still gets its three flag items, nothing else
  const Transaction& t1 = d.transactions[1];
  CHECK(t1.target == Category::OnlyRegistered);
  CHECK(t1.items.size() == 3);
  CHECK(has_item(t1, dict, "viewed", "False"));
  CHECK(has_item(t1, dict, "explored", "False"));
  CHECK(has_item(t1, dict, "certified", "False"));

  const Transaction& t2 = d.transactions[2];
  CHECK(t2.target == Category::OnlyViewed);
  CHECK(has_item(t2, dict, "grade", "low"));
  CHECK(has_item(t2, dict, "age", "18-24"));
  CHECK(has_item(t2, dict, "nevents", "low"));

  // two values per counter: edges over [low, high] of this course only
  CHECK(d.bin_edges.at("nevents") ==
        std::vector<double>{10.0 + 1.0 * 8990 / 3.0, 10.0 + 2.0 * 8990 / 3.0});
  CHECK(d.bin_edges.size() == 5);
}

TEST_CASE("bins are fitted per course, not globally") {
  RawRecord small = record();
  small.viewed = true;
  small.nevents = 3;
  RawRecord big = record();
  big.viewed = true;
  big.nevents = 9;

  ItemDictionary dict;
  CourseDataset a = build_transactions(table_of({small, big}, "a"),
                                       DiscretizerSpec::defaults(), dict);
  CourseDataset b = build_transactions(table_of({small}, "b"),
                                       DiscretizerSpec::defaults(), dict);
  CHECK(a.bin_edges.at("nevents") == std::vector<double>{5, 7});
  CHECK(b.bin_edges.at("nevents") == std::vector<double>{3, 3});
  // the same record discretizes differently under each course's edges
  ItemId low_id;
  REQUIRE(dict.find("nevents", "low", low_id));
  CHECK(std::find(a.transactions[0].items.begin(),
                  a.transactions[0].items.end(),
                  low_id) != a.transactions[0].items.end());
  CHECK(std::find(b.transactions[0].items.begin(),
                  b.transactions[0].items.end(),
                  low_id) != b.transactions[0].items.end());
}

TEST_CASE("an attribute with no recorded values emits no items or edges") {
  RawRecord r = record();
  r.viewed = true;
  ItemDictionary dict;
  CourseDataset d = build_transactions(table_of({r, r}),
                                       DiscretizerSpec::defaults(), dict);
  CHECK(d.bin_edges.empty());
  ItemId unused;
  CHECK_FALSE(dict.find("nevents", "low", unused));
}

TEST_CASE("unregistered rows are data errors with their row index") {
  RawRecord bad;
  bad.registered = false;
  ItemDictionary dict;
  CHECK_THROWS_WITH_AS(build_transactions(table_of({record(), bad}),
                                          DiscretizerSpec::defaults(), dict),
                       doctest::Contains("row 2"), DataError);
}

TEST_CASE("build_transactions is deterministic") {
  RawRecord r = record();
  r.viewed = true;
  r.grade = 0.7;
  r.nevents = 12;
  ItemDictionary d1, d2;
  CourseDataset a =
      build_transactions(table_of({r, record()}), DiscretizerSpec::defaults(),
                         d1);
  CourseDataset b =
      build_transactions(table_of({r, record()}), DiscretizerSpec::defaults(),
                         d2);
  CHECK(a == b);
  CHECK(d1.size() == d2.size());
}

TEST_CASE("discretizer spec validation") {
  DiscretizerSpec s = DiscretizerSpec::defaults();
  s.auto_attributes.push_back("grade");
  CHECK_THROWS_AS(s.validate(), ConfigError);

  DiscretizerSpec labels = DiscretizerSpec::defaults();
  labels.bin_labels = {"low", "high"};
  CHECK_THROWS_AS(labels.validate(), ConfigError);

  DiscretizerSpec manual = DiscretizerSpec::defaults();
  manual.manual["nevents"] = manual.manual["grade"];
  CHECK_THROWS_AS(manual.validate(), ConfigError);
}

TEST_CASE("dataset dumps list every used item and the audit fields") {
  RawRecord r = record();
  r.viewed = true;
  r.grade = 0.8;
  ItemDictionary dict;
  CourseDataset d =
      build_transactions(table_of({r}), DiscretizerSpec::defaults(), dict);
  std::ostringstream rows, sidecar;
  write_course_dataset(d, dict, rows, sidecar);
  CHECK(rows.str().find("onlyviewed\t") == 0);
  CHECK(sidecar.str().find("\"grade\"") != std::string::npos);
  CHECK(sidecar.str().find("\"target_totals\"") != std::string::npos);
}
