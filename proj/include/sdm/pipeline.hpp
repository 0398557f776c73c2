#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdm/category.hpp"
#include "sdm/items.hpp"
#include "sdm/postprocess.hpp"

namespace sdm {

struct PipelineConfig {
  std::vector<std::string> inputs;
  std::string output_dir;  // empty: keep results in memory only
  std::string output_format = "tsv";
  double min_support_target = 0.01;
  double min_confidence = 0.8;
  int max_antecedent = 3;
  std::optional<std::size_t> min_courses;  // default: every course
  int bins = 3;
  std::vector<Category> targets{kAllCategories.begin(), kAllCategories.end()};
  std::map<Category, std::set<std::string>> attribute_allowlist =
      default_allowlist();
  RedundancyBasis redundancy_basis = RedundancyBasis::MeanConfidence;
  int workers = 0;     // 0: hardware concurrency
  int partitions = 0;  // 0: same as workers
  bool write_datasets = false;

  // The registration-only category is described by demographics alone;
  // activity attributes say nothing about rows with no activity.
  static std::map<Category, std::set<std::string>> default_allowlist();
  void validate() const;  // throws ConfigError
};

struct PipelineResult {
  std::array<std::vector<Rule>, kNumCategories> rules;
  ItemDictionary dict;
  nlohmann::ordered_json manifest;
  std::vector<std::string> written_files;
  std::vector<std::string> diagnostics;
};

// ingest -> prep -> mine per course -> post-process -> write tables and a
// manifest (config echo, per-course row counts, category totals, bin
// edges). Empty tables are still written, with a diagnostic.
PipelineResult run_pipeline(const PipelineConfig& cfg);

struct PrepConfig {
  std::vector<std::string> inputs;
  std::string output_dir;
  int bins = 3;
};

// ingest + prep only: writes per-course transaction dumps with their JSON
// sidecars plus a small manifest; returns the written paths.
std::vector<std::string> run_prep(const PrepConfig& cfg);

struct SynthConfig {
  std::uint64_t seed = 1;
  int courses = 16;
  std::size_t rows_per_course = 62500;
};

// One course of synthetic enrollment data in the published 19-column
// layout. Fully determined by (seed, course_index): the same course comes
// out byte-identical no matter how many courses are generated around it.
std::string synthetic_course_csv(const SynthConfig& cfg, int course_index);

// Writes course_<n>.csv files; returns their paths.
std::vector<std::string> generate_synthetic(const SynthConfig& cfg,
                                            const std::string& out_dir);

struct BenchmarkConfig {
  std::vector<int> course_counts = {1, 2, 4, 8, 16};
  std::size_t rows_per_course = 62500;
  int repetitions = 3;
  std::uint64_t seed = 7;
  int multi_workers = 4;
  double min_support_target = 0.01;
  double min_confidence = 0.8;
  int max_antecedent = 3;
};

struct BenchmarkRow {
  int courses = 0;
  std::uint64_t rows = 0;
  std::string engine;  // "single" or "multi"
  double mean_seconds = 0;
  int repetitions = 0;
};

struct BenchmarkReport {
  std::vector<BenchmarkRow> rows;
  int multi_workers = 0;
  bool outputs_identical = false;
  bool multi_faster_at_largest = false;  // strictly lower mean wall-clock
  std::string render() const;  // delimited table plus the speedup verdict
};

// Generates and prepares data once, then times counting + mining +
// post-processing for the single-worker and multi-worker engines on the
// same datasets, alternating runs. Differing engine outputs are an
// internal error; speed is only reported.
BenchmarkReport run_benchmark(const BenchmarkConfig& cfg);

}  // namespace sdm
