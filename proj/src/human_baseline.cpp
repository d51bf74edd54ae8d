#include "socnav/analysis/human_baseline.hpp"

#include "socnav/common/error.hpp"

namespace socnav::analysis {

HumanBaseline human_baseline_mse(const std::vector<DuplicatedSample>& samples) {
  if (samples.empty())
    throw Error(ErrorCode::ShapeMismatch, "human_baseline_mse: no samples");

  HumanBaseline out;
  out.per_rater_mse.assign(4, 0.0);
  for (const DuplicatedSample& s : samples) {
    double reference = 0.0;
    for (int r = 0; r < 4; ++r)
      for (int p = 0; p < 2; ++p) reference += s.scores[r][p] / 100.0;
    reference /= 8.0;
    for (int r = 0; r < 4; ++r)
      for (int p = 0; p < 2; ++p) {
        const double d = s.scores[r][p] / 100.0 - reference;
        out.per_rater_mse[static_cast<size_t>(r)] += d * d;
      }
  }
  const double denom = 2.0 * static_cast<double>(samples.size());
  for (double& v : out.per_rater_mse) v /= denom;
  for (double v : out.per_rater_mse) out.average_mse += v;
  out.average_mse /= 4.0;
  return out;
}

}  // namespace socnav::analysis
