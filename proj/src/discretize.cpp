#include "sdm/discretize.hpp"

#include <algorithm>

#include "sdm/errors.hpp"

namespace sdm {

void validate_cut_spec(const ManualCutSpec& spec) {
  if (spec.cuts.empty()) throw ConfigError("manual cut spec has no cuts");
  if (!std::is_sorted(spec.cuts.begin(), spec.cuts.end()) ||
      std::adjacent_find(spec.cuts.begin(), spec.cuts.end()) !=
          spec.cuts.end())
    throw ConfigError("manual cuts must be strictly ascending");
  if (spec.labels.size() != spec.cuts.size() + 1)
    throw ConfigError("manual cut spec needs one label per interval: " +
                      std::to_string(spec.cuts.size() + 1) + " labels for " +
                      std::to_string(spec.cuts.size()) + " cuts");
}

const std::string& discretize_manual(double value, const ManualCutSpec& spec) {
  validate_cut_spec(spec);
  std::size_t k = 0;
  while (k < spec.cuts.size() && value >= spec.cuts[k]) ++k;
  return spec.labels[k];
}

std::optional<std::vector<double>> fit_equal_width(
    std::span<const double> values, int bins) {
  if (bins < 2) throw ConfigError("equal-width binning needs at least 2 bins");
  if (values.empty()) return std::nullopt;
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it, hi = *hi_it;
  std::vector<double> edges;
  edges.reserve(bins - 1);
  for (int k = 1; k < bins; ++k)
    edges.push_back(lo + static_cast<double>(k) * (hi - lo) /
                             static_cast<double>(bins));
  return edges;
}

std::size_t apply_equal_width(double value, std::span<const double> edges) {
  std::size_t k = 0;
  while (k < edges.size() && value >= edges[k]) ++k;
  return k;
}

std::optional<EqualWidthBinner> EqualWidthBinner::fit(
    std::span<const double> values, int bins) {
  auto edges = fit_equal_width(values, bins);
  if (!edges) return std::nullopt;
  EqualWidthBinner b;
  b.edges_ = std::move(*edges);
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  b.degenerate_ = (*lo == *hi);
  return b;
}

std::size_t EqualWidthBinner::bin_index(double value) const {
  if (degenerate_) return 0;
  return apply_equal_width(value, edges_);
}

}  // namespace sdm
