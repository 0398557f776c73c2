#include "sdm/report.hpp"

#include <cstdio>
#include <map>
#include <ostream>

#include "sdm/category.hpp"

namespace sdm {

namespace {

const std::map<std::string, std::string> kAttributeDisplay = {
    {"nevents", "NEvents"},       {"ndays_act", "NDaysAct"},
    {"nplay_video", "NPlayVideo"}, {"nchapters", "NChapter"},
    {"nforum_posts", "NumberOfPosts"},
};

const std::map<std::string, std::string> kLabelDisplay = {
    {"low", "Low"}, {"medium", "Medium"}, {"high", "High"}};

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string display_attribute(const std::string& attribute) {
  auto it = kAttributeDisplay.find(attribute);
  return it == kAttributeDisplay.end() ? attribute : it->second;
}

std::string display_value(const std::string& attribute,
                          const std::string& value) {
  (void)attribute;
  auto it = kLabelDisplay.find(value);
  return it == kLabelDisplay.end() ? value : it->second;
}

std::string render_antecedent(const std::vector<ItemId>& antecedent,
                              const ItemDictionary& dict) {
  std::string out;
  for (std::size_t i = 0; i < antecedent.size(); ++i) {
    if (i) out += " AND ";
    const Item& item = dict.item(antecedent[i]);
    out += display_attribute(item.attribute);
    out += '=';
    out += display_value(item.attribute, item.value);
  }
  return out;
}

std::string render_rule(const Rule& rule, const ItemDictionary& dict) {
  return "IF " + render_antecedent(rule.antecedent, dict) + " THEN " +
         category_label(rule.target);
}

void write_rules_tsv(const std::vector<Rule>& rules,
                     const ItemDictionary& dict, std::ostream& out) {
  out << "rule\tcourses_matched\tmean_support_target\tmean_confidence\t"
         "per_course\n";
  for (const Rule& r : rules) {
    out << render_rule(r, dict) << '\t' << r.courses_matched() << '\t'
        << fixed4(r.mean_support_target) << '\t' << fixed4(r.mean_confidence)
        << '\t';
    for (std::size_t i = 0; i < r.per_course.size(); ++i) {
      if (i) out << ';';
      const auto& [course, m] = r.per_course[i];
      out << course << '=' << m.joint << '/' << m.ant_total << '/'
          << m.target_total;
    }
    out << '\n';
  }
}

nlohmann::ordered_json rules_json(const std::vector<Rule>& rules,
                                  const ItemDictionary& dict) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Rule& r : rules) {
    nlohmann::ordered_json jr;
    jr["rule"] = render_rule(r, dict);
    nlohmann::ordered_json ant = nlohmann::ordered_json::array();
    for (ItemId id : r.antecedent) {
      const Item& item = dict.item(id);
      ant.push_back({{"attribute", item.attribute}, {"value", item.value}});
    }
    jr["antecedent"] = std::move(ant);
    jr["target"] = category_name(r.target);
    jr["courses_matched"] = r.courses_matched();
    jr["mean_support_target"] = r.mean_support_target;
    jr["mean_confidence"] = r.mean_confidence;
    nlohmann::ordered_json pc;
    for (const auto& [course, m] : r.per_course) {
      pc[course] = {{"joint", m.joint},
                    {"ant_total", m.ant_total},
                    {"target_total", m.target_total},
                    {"support_target", m.support_target()},
                    {"confidence", m.confidence()}};
    }
    jr["per_course"] = std::move(pc);
    arr.push_back(std::move(jr));
  }
  return arr;
}

}  // namespace sdm
