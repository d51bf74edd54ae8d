#include "socnav/analysis/kappa.hpp"

#include <algorithm>
#include <cmath>

#include "socnav/common/error.hpp"

namespace socnav::analysis {

int category_index(double score, int k) {
  const double step = 100.0 / static_cast<double>(k - 1);
  const int idx = static_cast<int>(std::lround(score / step));
  return std::clamp(idx, 0, k - 1);
}

std::optional<double> linear_weighted_kappa_from_matrix(
    const std::vector<std::vector<double>>& confusion) {
  const int k = static_cast<int>(confusion.size());
  if (k < 2) throw Error(ErrorCode::ShapeMismatch, "kappa: need k >= 2");
  double total = 0.0;
  for (const auto& row : confusion) {
    if (static_cast<int>(row.size()) != k)
      throw Error(ErrorCode::ShapeMismatch, "kappa: confusion matrix not square");
    for (double v : row) total += v;
  }
  if (total <= 0.0) throw Error(ErrorCode::ShapeMismatch, "kappa: empty matrix");

  std::vector<double> marginal_a(static_cast<size_t>(k), 0.0);
  std::vector<double> marginal_b(static_cast<size_t>(k), 0.0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      marginal_a[static_cast<size_t>(i)] += confusion[i][j] / total;
      marginal_b[static_cast<size_t>(j)] += confusion[i][j] / total;
    }

  double observed = 0.0;
  double expected = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const double w =
          1.0 - std::abs(i - j) / static_cast<double>(k - 1);
      observed += w * confusion[i][j] / total;
      expected += w * marginal_a[static_cast<size_t>(i)] * marginal_b[static_cast<size_t>(j)];
    }

  const double denom = 1.0 - expected;
  if (std::abs(denom) < 1e-12) return std::nullopt;  // degenerate
  return (observed - expected) / denom;
}

std::optional<double> linear_weighted_kappa(const std::vector<RatingPair>& pairs,
                                            int k) {
  if (pairs.empty()) throw Error(ErrorCode::ShapeMismatch, "kappa: no rating pairs");
  if (k < 2) throw Error(ErrorCode::ShapeMismatch, "kappa: need k >= 2");
  std::vector<std::vector<double>> confusion(
      static_cast<size_t>(k), std::vector<double>(static_cast<size_t>(k), 0.0));
  for (const RatingPair& p : pairs)
    confusion[static_cast<size_t>(category_index(p.rating_a, k))]
             [static_cast<size_t>(category_index(p.rating_b, k))] += 1.0;
  return linear_weighted_kappa_from_matrix(confusion);
}

}  // namespace socnav::analysis
