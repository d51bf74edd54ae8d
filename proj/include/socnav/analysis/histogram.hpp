#pragma once

#include <string>
#include <vector>

namespace socnav::analysis {

// Absolute-error histogram over [0, 1]: right-open bins except the last.
struct ErrorHistogram {
  std::vector<double> edges;   // n_bins + 1, strictly increasing
  std::vector<long> counts;    // n_bins
  long total = 0;

  std::string to_csv() const;  // bin_low,bin_high,count
};

// Bins |pred - label|; predictions and labels are on the [0, 1] scale.
// Throws Error(ShapeMismatch) on length mismatch or n_bins < 1.
ErrorHistogram error_histogram(const std::vector<double>& predictions,
                               const std::vector<double>& labels, int n_bins);

// Same, from precomputed absolute errors.
ErrorHistogram error_histogram(const std::vector<double>& abs_errors, int n_bins);

}  // namespace socnav::analysis
