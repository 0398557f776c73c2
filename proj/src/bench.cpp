#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "sdm/errors.hpp"
#include "sdm/ingest.hpp"
#include "sdm/mine.hpp"
#include "sdm/pipeline.hpp"
#include "sdm/prep.hpp"
#include "sdm/report.hpp"

namespace sdm {

namespace {

struct Engine {
  std::string name;
  int workers;
  int partitions;
};

// One timed pass: mine every course, post-process, render the four tables.
// Returns the rendered output so engines can be compared byte for byte.
std::string mine_and_render(const std::vector<CourseDataset>& datasets,
                            std::size_t count, const ItemDictionary& dict,
                            const BenchmarkConfig& cfg, const Engine& engine) {
  MiningConfig mc;
  mc.min_support_target = cfg.min_support_target;
  mc.min_confidence = cfg.min_confidence;
  mc.max_antecedent = cfg.max_antecedent;
  mc.partitions = engine.partitions;

  std::vector<CourseMiningResult> mined;
  mined.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    mined.push_back(mine_course(datasets[i], dict, mc, engine.workers));

  std::ostringstream out;
  for (Category target : kAllCategories) {
    std::size_t ti = static_cast<std::size_t>(target);
    std::vector<std::pair<std::string, std::vector<ScoredRule>>> per_course;
    for (std::size_t i = 0; i < count; ++i)
      per_course.emplace_back(
          datasets[i].course_id,
          filter_confidence(mined[i].by_target[ti], cfg.min_confidence));
    auto rules = rank_rules(prune_redundant(cross_course_join(per_course, 1)));
    out << "== " << category_name(target) << "\n";
    write_rules_tsv(rules, dict, out);
  }
  return out.str();
}

}  // namespace

BenchmarkReport run_benchmark(const BenchmarkConfig& cfg) {
  if (cfg.course_counts.empty()) throw ConfigError("no course counts given");
  for (int c : cfg.course_counts)
    if (c < 1) throw ConfigError("course counts must be at least 1");
  if (cfg.repetitions < 1)
    throw ConfigError("repetitions must be at least 1");
  if (cfg.multi_workers < 2)
    throw ConfigError("the multi-worker engine needs at least 2 workers");

  int max_count = *std::max_element(cfg.course_counts.begin(),
                                    cfg.course_counts.end());
  SynthConfig scfg;
  scfg.seed = cfg.seed;
  scfg.courses = max_count;
  scfg.rows_per_course = cfg.rows_per_course;

  ItemDictionary dict;
  std::vector<CourseDataset> datasets;
  datasets.reserve(max_count);
  DiscretizerSpec spec = DiscretizerSpec::defaults();
  for (int i = 0; i < max_count; ++i) {
    std::istringstream in(synthetic_course_csv(scfg, i));
    auto tables = load_course_tables(in);
    if (tables.size() != 1)
      throw InternalError("synthetic course split into multiple tables");
    datasets.push_back(
        build_transactions(select_and_rename(std::move(tables[0])), spec,
                           dict));
  }

  const Engine single{"single", 1, 1};
  const Engine multi{"multi", cfg.multi_workers, cfg.multi_workers};

  BenchmarkReport report;
  report.multi_workers = cfg.multi_workers;
  report.outputs_identical = true;

  double largest_single = 0, largest_multi = 0;
  for (int count : cfg.course_counts) {
    double sum_single = 0, sum_multi = 0;
    std::string out_single, out_multi;
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
      for (const Engine& engine : {single, multi}) {
        auto t0 = std::chrono::steady_clock::now();
        std::string rendered = mine_and_render(
            datasets, static_cast<std::size_t>(count), dict, cfg, engine);
        auto t1 = std::chrono::steady_clock::now();
        double seconds = std::chrono::duration<double>(t1 - t0).count();
        if (engine.workers == 1) {
          sum_single += seconds;
          if (rep == 0) out_single = std::move(rendered);
        } else {
          sum_multi += seconds;
          if (rep == 0) out_multi = std::move(rendered);
        }
      }
    }
    if (out_single != out_multi)
      throw InternalError("engines disagree at " + std::to_string(count) +
                          " courses; single-worker and multi-worker output "
                          "must match byte for byte");
    double mean_single = sum_single / cfg.repetitions;
    double mean_multi = sum_multi / cfg.repetitions;
    report.rows.push_back({count, count * cfg.rows_per_course, "single",
                           mean_single, cfg.repetitions});
    report.rows.push_back({count, count * cfg.rows_per_course, "multi",
                           mean_multi, cfg.repetitions});
    if (count == max_count) {
      largest_single = mean_single;
      largest_multi = mean_multi;
    }
  }
  report.multi_faster_at_largest = largest_multi < largest_single;
  return report;
}

std::string BenchmarkReport::render() const {
  std::string out = "courses\trows\tengine\tmean_seconds\trepetitions\n";
  char buf[160];
  for (const BenchmarkRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%d\t%llu\t%s\t%.3f\t%d\n", r.courses,
                  static_cast<unsigned long long>(r.rows), r.engine.c_str(),
                  r.mean_seconds, r.repetitions);
    out += buf;
  }
  out += "outputs identical across engines: ";
  out += outputs_identical ? "yes" : "NO";
  out += '\n';
  double s = 0, m = 0;
  int largest = 0;
  for (const BenchmarkRow& r : rows) {
    if (r.courses < largest) continue;
    largest = r.courses;
    (r.engine == "single" ? s : m) = r.mean_seconds;
  }
  std::snprintf(buf, sizeof buf,
                "multi-worker (%d) strictly faster at %d courses: %s "
                "(multi %.3fs vs single %.3fs)\n",
                multi_workers, largest,
                multi_faster_at_largest ? "PASS" : "FAIL", m, s);
  out += buf;
  return out;
}

}  // namespace sdm
