#include "sdm/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "sdm/errors.hpp"
#include "sdm/ingest.hpp"
#include "sdm/mine.hpp"
#include "sdm/prep.hpp"
#include "sdm/report.hpp"

namespace sdm {

namespace {

namespace fs = std::filesystem;

std::string sanitize(const std::string& name) {
  std::string out = name;
  for (char& c : out)
    if (c == '/' || c == '\\' || c == ':' || c == ' ') c = '_';
  return out;
}

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

DiscretizerSpec spec_for_bins(int bins) {
  DiscretizerSpec spec = DiscretizerSpec::defaults();
  spec.bins = bins;
  if (bins != 3) {
    spec.bin_labels.clear();
    for (int i = 1; i <= bins; ++i)
      spec.bin_labels.push_back("b" + std::to_string(i));
  }
  return spec;
}

void write_file(const fs::path& path, const std::string& content,
                std::vector<std::string>& written) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << content;
  written.push_back(path.string());
}

nlohmann::ordered_json totals_json(const TargetCounts& totals) {
  nlohmann::ordered_json j;
  for (Category c : kAllCategories)
    j[category_name(c)] = totals[static_cast<std::size_t>(c)];
  return j;
}

}  // namespace

std::map<Category, std::set<std::string>> PipelineConfig::default_allowlist() {
  return {{Category::OnlyRegistered, {"countryName", "LoE", "age", "gender"}}};
}

void PipelineConfig::validate() const {
  if (inputs.empty()) throw ConfigError("no input files given");
  if (output_format != "tsv" && output_format != "json")
    throw ConfigError("output format must be tsv or json, got '" +
                      output_format + "'");
  if (min_support_target < 0.0 || min_support_target > 1.0)
    throw ConfigError("min_support_target must be in [0, 1]");
  if (min_confidence < 0.0 || min_confidence > 1.0)
    throw ConfigError("min_confidence must be in [0, 1]");
  if (max_antecedent < 1)
    throw ConfigError("max_antecedent must be at least 1");
  if (min_courses && *min_courses < 1)
    throw ConfigError("min_courses must be at least 1");
  if (bins < 2) throw ConfigError("bins must be at least 2");
  if (workers < 0) throw ConfigError("workers must be positive (or 0 for auto)");
  if (partitions < 0)
    throw ConfigError("partitions must be positive (or 0 for workers)");
  if (targets.empty()) throw ConfigError("no target categories selected");
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();
  int workers = resolve_workers(cfg.workers);
  int partitions = cfg.partitions > 0 ? cfg.partitions : workers;

  PipelineResult res;

  auto tables = load_course_files(cfg.inputs);
  if (tables.empty()) throw DataError("inputs contain no rows");
  for (auto& t : tables) t = select_and_rename(std::move(t));

  DiscretizerSpec spec = spec_for_bins(cfg.bins);
  std::vector<CourseDataset> datasets;
  datasets.reserve(tables.size());
  for (const auto& t : tables)
    datasets.push_back(build_transactions(t, spec, res.dict));

  std::size_t min_courses = cfg.min_courses.value_or(datasets.size());
  if (min_courses > datasets.size())
    throw ConfigError("min_courses (" + std::to_string(min_courses) +
                      ") exceeds the number of courses (" +
                      std::to_string(datasets.size()) + ")");

  MiningConfig mc;
  mc.min_support_target = cfg.min_support_target;
  mc.min_confidence = cfg.min_confidence;
  mc.max_antecedent = cfg.max_antecedent;
  mc.targets = cfg.targets;
  mc.attribute_allowlist = cfg.attribute_allowlist;
  mc.partitions = partitions;

  std::vector<CourseMiningResult> mined;
  mined.reserve(datasets.size());
  for (const auto& d : datasets) {
    mined.push_back(mine_course(d, res.dict, mc, workers));
    for (const auto& diag : mined.back().diagnostics)
      res.diagnostics.push_back(diag);
  }

  for (Category target : kAllCategories) {
    if (std::find(cfg.targets.begin(), cfg.targets.end(), target) ==
        cfg.targets.end())
      continue;
    std::size_t ti = static_cast<std::size_t>(target);
    std::vector<std::pair<std::string, std::vector<ScoredRule>>> per_course;
    per_course.reserve(datasets.size());
    for (std::size_t i = 0; i < datasets.size(); ++i)
      per_course.emplace_back(
          datasets[i].course_id,
          filter_confidence(mined[i].by_target[ti], cfg.min_confidence));
    auto joined = cross_course_join(per_course, min_courses);
    auto pruned = prune_redundant(std::move(joined), cfg.redundancy_basis);
    res.rules[ti] = rank_rules(std::move(pruned));
    if (res.rules[ti].empty())
      res.diagnostics.push_back("target '" + category_name(target) +
                                "': no rules passed the thresholds in " +
                                std::to_string(min_courses) + "+ courses");
  }

  nlohmann::ordered_json manifest;
  manifest["tool"] = "sdminer";
  nlohmann::ordered_json jcfg;
  jcfg["inputs"] = cfg.inputs;
  jcfg["output_format"] = cfg.output_format;
  jcfg["min_support_target"] = cfg.min_support_target;
  jcfg["min_confidence"] = cfg.min_confidence;
  jcfg["max_antecedent"] = cfg.max_antecedent;
  jcfg["min_courses"] = min_courses;
  jcfg["bins"] = cfg.bins;
  nlohmann::ordered_json jtargets = nlohmann::ordered_json::array();
  for (Category c : kAllCategories)
    if (std::find(cfg.targets.begin(), cfg.targets.end(), c) !=
        cfg.targets.end())
      jtargets.push_back(category_name(c));
  jcfg["targets"] = std::move(jtargets);
  nlohmann::ordered_json jallow;
  for (const auto& [target, attrs] : cfg.attribute_allowlist)
    jallow[category_name(target)] =
        std::vector<std::string>(attrs.begin(), attrs.end());
  jcfg["attribute_allowlist"] = std::move(jallow);
  jcfg["redundancy_basis"] =
      cfg.redundancy_basis == RedundancyBasis::MeanConfidence
          ? "mean_confidence"
          : "per_course";
  jcfg["workers"] = workers;
  jcfg["partitions"] = partitions;
  manifest["config"] = std::move(jcfg);

  nlohmann::ordered_json jcourses = nlohmann::ordered_json::array();
  for (const auto& d : datasets) {
    nlohmann::ordered_json jc;
    jc["course_id"] = d.course_id;
    jc["rows"] = d.rows();
    jc["target_totals"] = totals_json(d.target_totals);
    nlohmann::ordered_json edges;
    for (const auto& [attr, e] : d.bin_edges) edges[attr] = e;
    jc["bin_edges"] = std::move(edges);
    jcourses.push_back(std::move(jc));
  }
  manifest["courses"] = std::move(jcourses);
  manifest["items"] = res.dict.size();
  nlohmann::ordered_json jrules;
  for (Category c : kAllCategories)
    jrules[category_name(c)] = res.rules[static_cast<std::size_t>(c)].size();
  manifest["rule_counts"] = std::move(jrules);
  manifest["diagnostics"] = res.diagnostics;
  res.manifest = std::move(manifest);

  if (!cfg.output_dir.empty()) {
    fs::create_directories(cfg.output_dir);
    for (Category target : kAllCategories) {
      if (std::find(cfg.targets.begin(), cfg.targets.end(), target) ==
          cfg.targets.end())
        continue;
      std::size_t ti = static_cast<std::size_t>(target);
      fs::path path = fs::path(cfg.output_dir) /
                      ("rules_" + category_name(target) + "." +
                       cfg.output_format);
      std::string content;
      if (cfg.output_format == "tsv") {
        std::ostringstream os;
        write_rules_tsv(res.rules[ti], res.dict, os);
        content = os.str();
      } else {
        content = rules_json(res.rules[ti], res.dict).dump(2) + "\n";
      }
      write_file(path, content, res.written_files);
    }
    if (cfg.write_datasets) {
      for (const auto& d : datasets) {
        std::ostringstream rows, sidecar;
        write_course_dataset(d, res.dict, rows, sidecar);
        fs::path base = fs::path(cfg.output_dir) /
                        ("dataset_" + sanitize(d.course_id));
        write_file(base.string() + ".tsv", rows.str(), res.written_files);
        write_file(base.string() + ".json", sidecar.str(),
                   res.written_files);
      }
    }
    write_file(fs::path(cfg.output_dir) / "manifest.json",
               res.manifest.dump(2) + "\n", res.written_files);
  }
  return res;
}

std::vector<std::string> run_prep(const PrepConfig& cfg) {
  if (cfg.inputs.empty()) throw ConfigError("no input files given");
  if (cfg.output_dir.empty()) throw ConfigError("no output directory given");
  if (cfg.bins < 2) throw ConfigError("bins must be at least 2");

  auto tables = load_course_files(cfg.inputs);
  for (auto& t : tables) t = select_and_rename(std::move(t));

  DiscretizerSpec spec = spec_for_bins(cfg.bins);
  ItemDictionary dict;
  std::vector<std::string> written;
  fs::create_directories(cfg.output_dir);

  nlohmann::ordered_json jcourses = nlohmann::ordered_json::array();
  for (const auto& t : tables) {
    CourseDataset d = build_transactions(t, spec, dict);
    std::ostringstream rows, sidecar;
    write_course_dataset(d, dict, rows, sidecar);
    fs::path base =
        fs::path(cfg.output_dir) / ("dataset_" + sanitize(d.course_id));
    write_file(base.string() + ".tsv", rows.str(), written);
    write_file(base.string() + ".json", sidecar.str(), written);
    nlohmann::ordered_json jc;
    jc["course_id"] = d.course_id;
    jc["rows"] = d.rows();
    jc["target_totals"] = totals_json(d.target_totals);
    jcourses.push_back(std::move(jc));
  }
  nlohmann::ordered_json manifest;
  manifest["tool"] = "sdminer";
  manifest["bins"] = cfg.bins;
  manifest["courses"] = std::move(jcourses);
  manifest["items"] = dict.size();
  write_file(fs::path(cfg.output_dir) / "prep_manifest.json",
             manifest.dump(2) + "\n", written);
  return written;
}

}  // namespace sdm
