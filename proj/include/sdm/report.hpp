#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdm/items.hpp"
#include "sdm/postprocess.hpp"

namespace sdm {

// Report-facing names: internal attribute keys and labels stay lowercase;
// tables print the styled forms (ndays_act -> NDaysAct, low -> Low, ...).
std::string display_attribute(const std::string& attribute);
std::string display_value(const std::string& attribute,
                          const std::string& value);

// "grade=High AND NDaysAct=High", items in ascending id order.
std::string render_antecedent(const std::vector<ItemId>& antecedent,
                              const ItemDictionary& dict);

// "IF grade=High AND NDaysAct=High THEN certified=True".
std::string render_rule(const Rule& rule, const ItemDictionary& dict);

// One table per target. TSV columns: rule, courses_matched,
// mean_support_target, mean_confidence, per_course (course=joint/ant/total
// triples). JSON carries the same data structured.
void write_rules_tsv(const std::vector<Rule>& rules,
                     const ItemDictionary& dict, std::ostream& out);
nlohmann::ordered_json rules_json(const std::vector<Rule>& rules,
                                  const ItemDictionary& dict);

}  // namespace sdm
