#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sdm/errors.hpp"
#include "sdm/pipeline.hpp"

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep))
    if (!part.empty()) out.push_back(part);
  return out;
}

std::vector<sdm::Category> parse_targets(const std::string& spec) {
  std::vector<sdm::Category> out;
  for (const std::string& name : split(spec, ','))
    out.push_back(sdm::parse_category(name));
  if (out.empty()) throw sdm::ConfigError("no target categories selected");
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double config_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw sdm::ConfigError("config key '" + key + "': bad number '" + v + "'");
}

int config_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    int i = std::stoi(v, &pos);
    if (pos == v.size()) return i;
  } catch (const std::exception&) {
  }
  throw sdm::ConfigError("config key '" + key + "': bad integer '" + v + "'");
}

bool config_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  throw sdm::ConfigError("config key '" + key + "': expected true or false, "
                         "got '" + v + "'");
}

// "onlyregistered=countryName,LoE" restricts a target to those attributes;
// "onlyregistered=*" lifts the restriction.
void apply_allow(std::map<sdm::Category, std::set<std::string>>& allowlist,
                 const std::string& deflt) {
  auto eq = deflt.find('=');
  if (eq == std::string::npos)
    throw sdm::ConfigError("--allow expects target=attr1,attr2 or target=*");
  sdm::Category target = sdm::parse_category(deflt.substr(0, eq));
  std::string attrs = deflt.substr(eq + 1);
  if (attrs == "*") {
    allowlist.erase(target);
    return;
  }
  auto parts = split(attrs, ',');
  if (parts.empty())
    throw sdm::ConfigError("--allow needs at least one attribute (or *)");
  allowlist[target] = {parts.begin(), parts.end()};
}

// Reads a key = value file for the mine subcommand. Keys match the flag
// names without the dashes; a value applies only when the flag was not
// given on the command line.
void apply_config(const std::string& path, const CLI::App& mine,
                  sdm::PipelineConfig& cfg, std::string& targets,
                  std::vector<std::string>& allows, bool& per_course,
                  std::size_t& min_courses, bool& min_courses_set) {
  std::ifstream in(path);
  if (!in) throw sdm::ConfigError("cannot open config file: " + path);
  auto given = [&mine](const char* flag) { return mine.count(flag) > 0; };
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string entry = trim(line);
    if (entry.empty() || entry[0] == '#') continue;
    std::size_t eq = entry.find('=');
    if (eq == std::string::npos)
      throw sdm::ConfigError("config line " + std::to_string(lineno) +
                             ": expected key = value");
    std::string key = trim(entry.substr(0, eq));
    std::string value = trim(entry.substr(eq + 1));
    if (key == "format") {
      if (!given("--format")) cfg.output_format = value;
    } else if (key == "min-support-target") {
      if (!given("--min-support-target"))
        cfg.min_support_target = config_double(key, value);
    } else if (key == "min-confidence") {
      if (!given("--min-confidence"))
        cfg.min_confidence = config_double(key, value);
    } else if (key == "max-antecedent") {
      if (!given("--max-antecedent"))
        cfg.max_antecedent = config_int(key, value);
    } else if (key == "min-courses") {
      int v = config_int(key, value);
      if (v < 0)
        throw sdm::ConfigError("config key 'min-courses': bad integer '" +
                               value + "'");
      if (!min_courses_set) {
        min_courses = static_cast<std::size_t>(v);
        min_courses_set = true;
      }
    } else if (key == "bins") {
      if (!given("--bins")) cfg.bins = config_int(key, value);
    } else if (key == "targets") {
      if (!given("--targets")) targets = value;
    } else if (key == "workers") {
      if (!given("--workers")) cfg.workers = config_int(key, value);
    } else if (key == "partitions") {
      if (!given("--partitions")) cfg.partitions = config_int(key, value);
    } else if (key == "allow") {
      if (!given("--allow")) allows.push_back(value);
    } else if (key == "per-course-redundancy") {
      if (!given("--per-course-redundancy"))
        per_course = config_bool(key, value);
    } else if (key == "write-datasets") {
      if (!given("--write-datasets"))
        cfg.write_datasets = config_bool(key, value);
    } else {
      throw sdm::ConfigError("unknown config key '" + key + "' (line " +
                             std::to_string(lineno) + ")");
    }
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Subgroup discovery over per-course enrollment tables"};
  app.require_subcommand(1);

  // prep
  auto* prep = app.add_subcommand(
      "prep", "Clean and discretize courses, write transaction dumps");
  sdm::PrepConfig prep_cfg;
  prep->add_option("-i,--input", prep_cfg.inputs, "input csv file(s)")
      ->required();
  prep->add_option("-o,--output-dir", prep_cfg.output_dir,
                   "directory for dumps")
      ->required();
  prep->add_option("--bins", prep_cfg.bins, "equal-width bins per counter");

  // mine
  auto* mine = app.add_subcommand(
      "mine", "Run the full pipeline and write rule tables");
  sdm::PipelineConfig mine_cfg;
  std::string targets_spec;
  std::vector<std::string> allow_specs;
  bool per_course_redundancy = false;
  std::size_t min_courses_opt = 0;
  mine->add_option("-i,--input", mine_cfg.inputs, "input csv file(s)")
      ->required();
  mine->add_option("-o,--output-dir", mine_cfg.output_dir,
                   "directory for rule tables and the manifest")
      ->required();
  mine->add_option("--format", mine_cfg.output_format, "tsv or json");
  mine->add_option("--min-support-target", mine_cfg.min_support_target,
                   "minimum share of the target's rows a rule must cover");
  mine->add_option("--min-confidence", mine_cfg.min_confidence,
                   "minimum per-course confidence");
  mine->add_option("--max-antecedent", mine_cfg.max_antecedent,
                   "maximum items in a rule's IF part");
  mine->add_option("--min-courses", min_courses_opt,
                   "courses a rule must hold in (default: all)");
  mine->add_option("--bins", mine_cfg.bins, "equal-width bins per counter");
  mine->add_option("--targets", targets_spec,
                   "comma-separated target categories");
  mine->add_option("--workers", mine_cfg.workers,
                   "worker threads (0 = all cores)");
  mine->add_option("--partitions", mine_cfg.partitions,
                   "input partitions (0 = workers)");
  mine->add_option("--allow", allow_specs,
                   "restrict a target to attributes: target=a,b or target=*");
  mine->add_flag("--per-course-redundancy", per_course_redundancy,
                 "judge redundancy per course instead of on mean confidence");
  mine->add_flag("--write-datasets", mine_cfg.write_datasets,
                 "also write per-course transaction dumps");
  std::string config_path;
  mine->add_option("--config", config_path,
                   "key = value file filling in options not given as flags");

  // bench
  auto* bench = app.add_subcommand(
      "bench", "Time single- vs multi-worker mining on synthetic courses");
  sdm::BenchmarkConfig bench_cfg;
  std::string counts_spec;
  std::string bench_out;
  bench->add_option("--rows-per-course", bench_cfg.rows_per_course,
                    "rows per synthetic course");
  bench->add_option("--course-counts", counts_spec,
                    "comma-separated course counts (default 1,2,4,8,16)");
  bench->add_option("--repetitions", bench_cfg.repetitions,
                    "timed repetitions per engine");
  bench->add_option("--seed", bench_cfg.seed, "generator seed");
  bench->add_option("--workers", bench_cfg.multi_workers,
                    "workers for the multi-worker engine");
  bench->add_option("--output", bench_out, "report file (default: stdout)");

  // synth
  auto* synth = app.add_subcommand(
      "synth", "Generate synthetic enrollment csv files");
  sdm::SynthConfig synth_cfg;
  std::string synth_dir;
  synth->add_option("-o,--output-dir", synth_dir, "directory for csv files")
      ->required();
  synth->add_option("--seed", synth_cfg.seed, "generator seed");
  synth->add_option("--courses", synth_cfg.courses, "number of courses");
  synth->add_option("--rows-per-course", synth_cfg.rows_per_course,
                    "rows per course");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (prep->parsed()) {
    auto written = sdm::run_prep(prep_cfg);
    for (const auto& f : written) std::cout << f << '\n';
    return 0;
  }
  if (mine->parsed()) {
    bool min_courses_set = mine->count("--min-courses") > 0;
    if (!config_path.empty())
      apply_config(config_path, *mine, mine_cfg, targets_spec, allow_specs,
                   per_course_redundancy, min_courses_opt, min_courses_set);
    if (!targets_spec.empty()) mine_cfg.targets = parse_targets(targets_spec);
    for (const std::string& a : allow_specs)
      apply_allow(mine_cfg.attribute_allowlist, a);
    if (per_course_redundancy)
      mine_cfg.redundancy_basis = sdm::RedundancyBasis::PerCourse;
    if (min_courses_set) mine_cfg.min_courses = min_courses_opt;
    auto res = sdm::run_pipeline(mine_cfg);
    for (const auto& d : res.diagnostics) std::cerr << d << '\n';
    for (const auto& f : res.written_files) std::cout << f << '\n';
    return 0;
  }
  if (bench->parsed()) {
    if (!counts_spec.empty()) {
      bench_cfg.course_counts.clear();
      for (const std::string& c : split(counts_spec, ',')) {
        try {
          std::size_t pos = 0;
          int v = std::stoi(c, &pos);
          if (pos != c.size()) throw std::invalid_argument(c);
          bench_cfg.course_counts.push_back(v);
        } catch (const std::exception&) {
          throw sdm::ConfigError("bad course count: " + c);
        }
      }
    }
    auto report = sdm::run_benchmark(bench_cfg);
    std::string text = report.render();
    if (bench_out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(bench_out, std::ios::binary);
      if (!f) throw sdm::ConfigError("cannot write " + bench_out);
      f << text;
      std::cout << bench_out << '\n';
    }
    return 0;
  }
  if (synth->parsed()) {
    auto written = sdm::generate_synthetic(synth_cfg, synth_dir);
    for (const auto& f : written) std::cout << f << '\n';
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return sdm::exit_code_for(e);
  }
}
