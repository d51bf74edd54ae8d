#pragma once

#include <optional>
#include <string>
#include <vector>

namespace socnav::analysis {

// One sample rated by two raters on the six-value reference scale
// {0, 20, 40, 60, 80, 100}. Off-grid scores are snapped to the nearest
// category when converted to indices.
struct RatingPair {
  std::string sample_id;
  double rating_a = 0.0;
  double rating_b = 0.0;
};

constexpr int kNumCategories = 6;

// Score on the 0..100 scale -> category index 0..k-1.
int category_index(double score, int k = kNumCategories);

// Linearly weighted kappa (Cohen 1968): weights w_ij = 1 - |i-j|/(k-1),
// observed proportions against the outer product of the marginals. Returns
// nullopt when the statistic is undefined (all mass in a single identical
// category for both raters). Throws Error(ShapeMismatch) on empty input or
// k < 2.
std::optional<double> linear_weighted_kappa(const std::vector<RatingPair>& pairs,
                                            int k = kNumCategories);

// Same statistic from a prebuilt k x k confusion matrix of counts
// (rows: rater A, cols: rater B).
std::optional<double> linear_weighted_kappa_from_matrix(
    const std::vector<std::vector<double>>& confusion);

}  // namespace socnav::analysis
