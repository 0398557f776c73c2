#include "sdm/prep.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "json.hpp"
#include "sdm/errors.hpp"

namespace sdm {

namespace {

const std::set<std::string> kAutoCandidates = {
    "nevents", "ndays_act", "nplay_video", "nchapters", "nforum_posts"};

std::optional<double> numeric_value(const RawRecord& r,
                                    const std::string& attribute) {
  if (attribute == "nevents") return r.nevents;
  if (attribute == "ndays_act") return r.ndays_act;
  if (attribute == "nplay_video") return r.nplay_video;
  if (attribute == "nchapters") return r.nchapters;
  if (attribute == "nforum_posts") return r.nforum_posts;
  throw ConfigError("unknown numeric attribute: " + attribute);
}

std::optional<double> manual_value(const RawRecord& r,
                                   const std::string& attribute) {
  if (attribute == "age") {
    if (!r.year_of_birth) return std::nullopt;
    return static_cast<double>(*r.year_of_birth);
  }
  if (attribute == "grade") return r.grade;
  throw ConfigError("manual discretization covers age and grade, not " +
                    attribute);
}

}  // namespace

DiscretizerSpec DiscretizerSpec::defaults() {
  DiscretizerSpec s;
  s.manual["age"] = ManualCutSpec{
      {1963, 1973, 1983, 1993, 1999},
      {">54", "45-54", "35-44", "25-34", "18-24", "<18"}};
  s.manual["grade"] = ManualCutSpec{{0.5}, {"low", "high"}};
  s.auto_attributes = {"nevents", "ndays_act", "nplay_video", "nchapters",
                       "nforum_posts"};
  return s;
}

void DiscretizerSpec::validate() const {
  for (const auto& [attr, cut_spec] : manual) {
    if (attr != "age" && attr != "grade")
      throw ConfigError("manual discretization covers age and grade, not " +
                        attr);
    validate_cut_spec(cut_spec);
  }
  for (const std::string& attr : auto_attributes)
    if (!kAutoCandidates.contains(attr))
      throw ConfigError("equal-width binning covers the activity counters, "
                        "not " + attr);
  if (bins < 2) throw ConfigError("equal-width binning needs at least 2 bins");
  if (bin_labels.size() != static_cast<std::size_t>(bins))
    throw ConfigError("need one bin label per bin: " + std::to_string(bins) +
                      " bins, " + std::to_string(bin_labels.size()) +
                      " labels");
}

CourseDataset build_transactions(const RawCourseTable& table,
                                 const DiscretizerSpec& spec,
                                 ItemDictionary& dict) {
  spec.validate();

  CourseDataset out;
  out.course_id = table.course_id;

  std::map<std::string, EqualWidthBinner> binners;
  std::vector<double> values;
  for (const std::string& attr : spec.auto_attributes) {
    values.clear();
    for (const RawRecord& r : table.rows) {
      auto v = numeric_value(r, attr);
      if (v) values.push_back(*v);
    }
    auto binner = EqualWidthBinner::fit(values, spec.bins);
    if (binner) {
      out.bin_edges[attr] = binner->edges();
      binners.emplace(attr, std::move(*binner));
    }
  }

  out.transactions.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const RawRecord& r = table.rows[i];
    Transaction t;
    try {
      t.target =
          derive_category(r.registered, r.viewed, r.explored, r.certified);
    } catch (const DataError& e) {
      throw DataError(i + 1, std::string(e.what()) + " in course '" +
                                 table.course_id + "'");
    }

    if (r.country) t.items.push_back(dict.intern("countryName", *r.country));
    if (r.level_of_education)
      t.items.push_back(dict.intern("LoE", *r.level_of_education));
    if (r.gender) t.items.push_back(dict.intern("gender", *r.gender));
    for (const auto& [attr, cut_spec] : spec.manual) {
      auto v = manual_value(r, attr);
      if (v) t.items.push_back(dict.intern(attr, discretize_manual(*v, cut_spec)));
    }
    for (const std::string& attr : spec.auto_attributes) {
      auto v = numeric_value(r, attr);
      auto b = binners.find(attr);
      if (v && b != binners.end())
        t.items.push_back(
            dict.intern(attr, spec.bin_labels[b->second.bin_index(*v)]));
    }
    t.items.push_back(dict.intern("viewed", r.viewed ? "True" : "False"));
    t.items.push_back(dict.intern("explored", r.explored ? "True" : "False"));
    t.items.push_back(dict.intern("certified", r.certified ? "True" : "False"));

    std::sort(t.items.begin(), t.items.end());
    ++out.target_totals[static_cast<std::size_t>(t.target)];
    out.transactions.push_back(std::move(t));
  }
  return out;
}

void write_course_dataset(const CourseDataset& dataset,
                          const ItemDictionary& dict, std::ostream& rows_out,
                          std::ostream& sidecar_out) {
  std::set<ItemId> used;
  for (const Transaction& t : dataset.transactions) {
    rows_out << category_name(t.target);
    rows_out << '\t';
    for (std::size_t i = 0; i < t.items.size(); ++i) {
      if (i) rows_out << ' ';
      rows_out << t.items[i];
      used.insert(t.items[i]);
    }
    rows_out << '\n';
  }

  nlohmann::ordered_json side;
  side["course_id"] = dataset.course_id;
  side["rows"] = dataset.rows();
  nlohmann::ordered_json totals;
  for (Category c : kAllCategories)
    totals[category_name(c)] =
        dataset.target_totals[static_cast<std::size_t>(c)];
  side["target_totals"] = std::move(totals);
  nlohmann::ordered_json edges;
  for (const auto& [attr, e] : dataset.bin_edges) edges[attr] = e;
  side["bin_edges"] = std::move(edges);
  nlohmann::ordered_json items;
  for (ItemId id : used) {
    const Item& it = dict.item(id);
    items[std::to_string(id)] = {{"attribute", it.attribute},
                                 {"value", it.value}};
  }
  side["items"] = std::move(items);
  sidecar_out << side.dump(2) << '\n';
}

}  // namespace sdm
