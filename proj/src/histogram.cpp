#include "socnav/analysis/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "socnav/common/error.hpp"

namespace socnav::analysis {

ErrorHistogram error_histogram(const std::vector<double>& abs_errors, int n_bins) {
  if (n_bins < 1) throw Error(ErrorCode::ShapeMismatch, "histogram: n_bins < 1");
  ErrorHistogram h;
  h.edges.resize(static_cast<size_t>(n_bins) + 1);
  for (int i = 0; i <= n_bins; ++i)
    h.edges[static_cast<size_t>(i)] = static_cast<double>(i) / n_bins;
  h.counts.assign(static_cast<size_t>(n_bins), 0);
  for (double e : abs_errors) {
    int bin = static_cast<int>(std::floor(e * n_bins));
    bin = std::clamp(bin, 0, n_bins - 1);  // the last bin is closed
    h.counts[static_cast<size_t>(bin)]++;
    h.total++;
  }
  return h;
}

ErrorHistogram error_histogram(const std::vector<double>& predictions,
                               const std::vector<double>& labels, int n_bins) {
  if (predictions.size() != labels.size())
    throw Error(ErrorCode::ShapeMismatch, "histogram: length mismatch");
  std::vector<double> errs;
  errs.reserve(predictions.size());
  for (size_t i = 0; i < predictions.size(); ++i)
    errs.push_back(std::abs(predictions[i] - labels[i]));
  return error_histogram(errs, n_bins);
}

std::string ErrorHistogram::to_csv() const {
  std::ostringstream os;
  os << "bin_low,bin_high,count\n";
  char buf[64];
  for (size_t i = 0; i < counts.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.6g,%.6g,%ld\n", edges[i], edges[i + 1],
                  counts[i]);
    os << buf;
  }
  return os.str();
}

}  // namespace socnav::analysis
