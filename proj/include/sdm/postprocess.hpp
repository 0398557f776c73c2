#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sdm/subgroup.hpp"

namespace sdm {

struct CourseMeasure {
  std::uint64_t joint = 0;
  std::uint64_t ant_total = 0;
  std::uint64_t target_total = 0;
  double support_target() const {
    return static_cast<double>(joint) / static_cast<double>(target_total);
  }
  double confidence() const {
    return static_cast<double>(joint) / static_cast<double>(ant_total);
  }
  bool operator==(const CourseMeasure&) const = default;
};

// A rule that held in one or more courses, with per-course counts and the
// arithmetic means over the courses it matched.
struct Rule {
  std::vector<ItemId> antecedent;  // item ids, ascending
  Category target;
  std::vector<std::pair<std::string, CourseMeasure>> per_course;  // by course_id
  double mean_support_target = 0;
  double mean_confidence = 0;

  std::size_t courses_matched() const { return per_course.size(); }
  bool operator==(const Rule&) const = default;
};

// Keeps rules whose confidence reaches tau (inclusive, compared in double).
std::vector<ScoredRule> filter_confidence(std::vector<ScoredRule> rules,
                                          double tau);

// Joins per-course rule lists on (antecedent, target); a rule survives when
// it matched at least min_courses courses. Means are plain averages over
// the matched courses. Requires 1 <= min_courses <= number of courses.
std::vector<Rule> cross_course_join(
    const std::vector<std::pair<std::string, std::vector<ScoredRule>>>&
        per_course,
    std::size_t min_courses);

enum class RedundancyBasis {
  MeanConfidence,  // compare mean confidence across matched courses
  PerCourse,       // general must match every course of the specific rule
                   // with at least its confidence in each
};

// Removes rules dominated by a kept, strictly more general rule with the
// same target: smaller antecedent, proper subset, confidence at least as
// high. Rules are considered smallest-antecedent first, so every removal
// has a surviving witness. Idempotent.
std::vector<Rule> prune_redundant(
    std::vector<Rule> rules,
    RedundancyBasis basis = RedundancyBasis::MeanConfidence);

// Total order: mean confidence desc, mean support desc, antecedent size
// asc, antecedent lexicographic asc, target asc.
std::vector<Rule> rank_rules(std::vector<Rule> rules);

}  // namespace sdm
