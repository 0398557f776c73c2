#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "sdm/errors.hpp"
#include "sdm/pipeline.hpp"

namespace sdm {

namespace {

// splitmix64; kept explicit so a seed means the same bytes on every
// platform and standard library.
struct Rng {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    return lo + below(hi - lo + 1);
  }
  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return real01() < p; }
};

const char* kCountries[] = {
    "United States", "India",   "Unknown/Other", "Russian Federation",
    "United Kingdom", "Brazil", "Canada",        "Germany",
    "Spain",          "Nigeria", "China",        "Pakistan"};

const char* kEducation[] = {"Less than Secondary", "Secondary", "Bachelor's",
                            "Master's", "Doctorate"};

void append_grade(std::string& out, double g) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.2f", g);
  out += buf;
}

}  // namespace

std::string synthetic_course_csv(const SynthConfig& cfg, int course_index) {
  if (course_index < 0 || course_index >= cfg.courses)
    throw ConfigError("course index out of range");
  Rng rng{cfg.seed * 0x9e3779b97f4a7c15ull +
          static_cast<std::uint64_t>(course_index) * 0xd1b54a32d192ed03ull};

  char cid[64];
  std::snprintf(cid, sizeof cid, "SynthU/C%02d/2024_T1", course_index + 1);

  // Category mix drawn within the shares observed across real courses:
  // certified and explored are rare, registration-only varies widely, and
  // viewing-only gets the remainder.
  double certified = 0.007 + 0.073 * rng.real01();
  double explored = 0.005 + 0.055 * rng.real01();
  double reg_max = std::min(0.62, 1.0 - 0.34 - certified - explored);
  double registered_only = 0.04 + (reg_max - 0.04) * rng.real01();

  std::string out;
  out.reserve(cfg.rows_per_course * 96 + 256);
  out += "course_id,userid_DI,registered,viewed,explored,certified,"
         "final_cc_cname_DI,LoE,YoB,gender,grade,start_time_DI,last_event_DI,"
         "nevents,ndays_act,nplay_video,nchapters,nforum_posts,roles\n";

  for (std::size_t row = 0; row < cfg.rows_per_course; ++row) {
    double pick = rng.real01();
    int cat;  // 0 certified, 1 only explored, 2 only viewed, 3 only registered
    if (pick < certified)
      cat = 0;
    else if (pick < certified + explored)
      cat = 1;
    else if (pick < certified + explored + registered_only)
      cat = 3;
    else
      cat = 2;

    bool f_viewed = false, f_explored = false, f_certified = false;
    switch (cat) {
      case 0:
        f_certified = true;
        f_viewed = rng.chance(0.97);
        f_explored = f_viewed && rng.chance(0.93);
        break;
      case 1:
        f_explored = true;
        f_viewed = rng.chance(0.9);
        break;
      case 2:
        f_viewed = true;
        break;
      case 3:
        break;
    }

    out += cid;
    out += ",MHxPC13";
    out += std::to_string(1000000 + rng.below(9000000));
    out += ",1,";
    out += f_viewed ? "1," : "0,";
    out += f_explored ? "1," : "0,";
    out += f_certified ? "1," : "0,";

    out += kCountries[rng.below(std::size(kCountries))];
    out += ',';
    if (!rng.chance(0.09)) out += kEducation[rng.below(std::size(kEducation))];
    out += ',';
    if (!rng.chance(0.08))
      out += std::to_string(1950 + rng.below(53) + rng.below(10));
    out += ',';
    if (!rng.chance(0.08)) out += rng.chance(0.55) ? "m" : "f";
    out += ',';

    switch (cat) {  // grade
      case 0:
        if (rng.chance(0.97))
          append_grade(out, 0.5 + 0.5 * rng.real01());
        else
          append_grade(out, 0.30 + 0.19 * rng.real01());
        break;
      case 1:
        append_grade(out, 0.6 * rng.real01());
        break;
      case 2:
        if (rng.chance(0.6))
          out += '0';
        else
          append_grade(out, 0.15 * rng.real01());
        break;
      case 3:
        if (rng.chance(0.7)) out += '0';
        break;
    }

    out += ",2013-07-";
    out += std::to_string(10 + rng.below(20));
    out += ",2013-";
    out += std::to_string(8 + rng.below(4));
    out += '-';
    out += std::to_string(10 + rng.below(19));
    out += ',';

    auto count = [&](std::uint64_t lo, std::uint64_t hi) {
      out += std::to_string(rng.between(lo, hi));
    };
    switch (cat) {  // nevents, ndays_act, nplay_video, nchapters, nforum_posts
      case 0:
        count(3000, 20000); out += ',';
        count(40, 120); out += ',';
        count(100, 2000); out += ',';
        count(12, 20); out += ',';
        count(0, 60);
        break;
      case 1:
        count(500, 6000); out += ',';
        count(8, 60); out += ',';
        count(10, 600); out += ',';
        count(8, 16); out += ',';
        count(0, 15);
        break;
      case 2:
        count(1, 800); out += ',';
        count(1, 12); out += ',';
        if (rng.chance(0.8)) count(0, 120);
        out += ',';
        if (rng.chance(0.85)) count(0, 4);
        out += ',';
        out += rng.chance(0.98) ? "0" : "1";
        break;
      case 3:
        if (rng.chance(0.2)) {
          count(1, 3); out += ',';
          out += "1,,,";
          out += rng.chance(0.99) ? "0" : "1";
        } else {
          out += ",,,,";
        }
        break;
    }
    out += ",\n";  // roles stays blank
  }
  return out;
}

std::vector<std::string> generate_synthetic(const SynthConfig& cfg,
                                            const std::string& out_dir) {
  if (cfg.courses < 1) throw ConfigError("courses must be at least 1");
  if (cfg.rows_per_course < 1)
    throw ConfigError("rows_per_course must be at least 1");
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> paths;
  for (int i = 0; i < cfg.courses; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "course_%02d.csv", i + 1);
    std::filesystem::path p = std::filesystem::path(out_dir) / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + p.string());
    f << synthetic_course_csv(cfg, i);
    paths.push_back(p.string());
  }
  return paths;
}

}  // namespace sdm
