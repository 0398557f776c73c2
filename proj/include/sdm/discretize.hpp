#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sdm {

// Hand-picked cut points. `cuts` must be strictly ascending; `labels` has
// one more entry than `cuts` and names the half-open intervals
// (-inf, c0), [c0, c1), ..., [c_last, +inf) from low to high.
struct ManualCutSpec {
  std::vector<double> cuts;
  std::vector<std::string> labels;
};

// Throws ConfigError if cuts are not strictly ascending or the label count
// is not cuts + 1.
void validate_cut_spec(const ManualCutSpec& spec);

// Returns the label of the interval containing `value`. Throws ConfigError
// if the spec is malformed (unordered cuts, label count mismatch).
const std::string& discretize_manual(double value, const ManualCutSpec& spec);

// Equal-width edges over [min(values), max(values)]: bins-1 interior edges
// at min + k*(max-min)/bins. Returns nullopt when `values` is empty.
std::optional<std::vector<double>> fit_equal_width(
    std::span<const double> values, int bins);

// Bin index for strictly ascending `edges`: below the first edge -> 0,
// [edges[k-1], edges[k]) -> k, at or above the last edge -> edges.size().
std::size_t apply_equal_width(double value, std::span<const double> edges);

// Fitted equal-width binner for one attribute of one course. When every
// value was identical the edges collapse and everything lands in the
// lowest bin; the collapsed edges are still kept for the audit trail.
class EqualWidthBinner {
 public:
  static std::optional<EqualWidthBinner> fit(std::span<const double> values,
                                             int bins);
  std::size_t bin_index(double value) const;
  const std::vector<double>& edges() const { return edges_; }
  bool degenerate() const { return degenerate_; }

 private:
  std::vector<double> edges_;
  bool degenerate_ = false;
};

}  // namespace sdm
