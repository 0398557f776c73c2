#include "sdm/postprocess.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "sdm/errors.hpp"

namespace sdm {

namespace {

bool proper_subset(const std::vector<ItemId>& small,
                   const std::vector<ItemId>& big) {
  return small.size() < big.size() &&
         std::includes(big.begin(), big.end(), small.begin(), small.end());
}

const CourseMeasure* find_course(const Rule& r, const std::string& course) {
  for (const auto& [id, m] : r.per_course)
    if (id == course) return &m;
  return nullptr;
}

// Under the per-course basis a general rule dominates only if it matched
// every course the specific rule matched, at least as confidently in each.
bool dominates(const Rule& general, const Rule& specific,
               RedundancyBasis basis) {
  if (basis == RedundancyBasis::MeanConfidence)
    return general.mean_confidence >= specific.mean_confidence;
  for (const auto& [course, m] : specific.per_course) {
    const CourseMeasure* gm = find_course(general, course);
    if (!gm || gm->confidence() < m.confidence()) return false;
  }
  return true;
}

void compute_means(Rule& r) {
  double support = 0, confidence = 0;
  for (const auto& [course, m] : r.per_course) {
    support += m.support_target();
    confidence += m.confidence();
  }
  auto n = static_cast<double>(r.per_course.size());
  r.mean_support_target = support / n;
  r.mean_confidence = confidence / n;
}

}  // namespace

std::vector<ScoredRule> filter_confidence(std::vector<ScoredRule> rules,
                                          double tau) {
  if (tau < 0.0 || tau > 1.0)
    throw ConfigError("confidence threshold must be in [0, 1]");
  std::erase_if(rules, [tau](const ScoredRule& r) {
    return !ratio_at_least(r.joint, r.ant_total, tau);
  });
  return rules;
}

std::vector<Rule> cross_course_join(
    const std::vector<std::pair<std::string, std::vector<ScoredRule>>>&
        per_course,
    std::size_t min_courses) {
  if (min_courses < 1 || min_courses > per_course.size())
    throw ConfigError("min_courses must be between 1 and the number of "
                      "courses (" + std::to_string(per_course.size()) + ")");

  std::map<std::pair<std::vector<ItemId>, Category>, Rule> joined;
  for (const auto& [course_id, rules] : per_course) {
    for (const ScoredRule& r : rules) {
      Rule& entry = joined[{r.antecedent, r.target}];
      if (entry.per_course.empty()) {
        entry.antecedent = r.antecedent;
        entry.target = r.target;
      }
      entry.per_course.emplace_back(
          course_id, CourseMeasure{r.joint, r.ant_total, r.target_total});
    }
  }

  std::vector<Rule> out;
  for (auto& [key, rule] : joined) {
    if (rule.courses_matched() < min_courses) continue;
    std::sort(rule.per_course.begin(), rule.per_course.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    compute_means(rule);
    out.push_back(std::move(rule));
  }
  return out;
}

std::vector<Rule> prune_redundant(std::vector<Rule> rules,
                                  RedundancyBasis basis) {
  std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
    return std::tuple(a.antecedent.size(), a.antecedent, a.target) <
           std::tuple(b.antecedent.size(), b.antecedent, b.target);
  });
  std::vector<Rule> kept;
  for (Rule& r : rules) {
    bool redundant = false;
    for (const Rule& g : kept) {
      if (g.antecedent.size() >= r.antecedent.size()) break;
      if (g.target != r.target) continue;
      if (!proper_subset(g.antecedent, r.antecedent)) continue;
      if (dominates(g, r, basis)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) kept.push_back(std::move(r));
  }
  return kept;
}

std::vector<Rule> rank_rules(std::vector<Rule> rules) {
  std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
    if (a.mean_confidence != b.mean_confidence)
      return a.mean_confidence > b.mean_confidence;
    if (a.mean_support_target != b.mean_support_target)
      return a.mean_support_target > b.mean_support_target;
    return std::tuple(a.antecedent.size(), a.antecedent, a.target) <
           std::tuple(b.antecedent.size(), b.antecedent, b.target);
  });
  return rules;
}

}  // namespace sdm
