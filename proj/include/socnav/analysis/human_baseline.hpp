#pragma once

#include <map>
#include <string>
#include <vector>

namespace socnav::analysis {

// The duplicate-rated subset: every sample carries two passes from each of
// four raters (8 scores on the 0..100 scale).
struct DuplicatedSample {
  std::string sample_id;
  // scores[rater][pass], raters 0..3, passes 0..1
  double scores[4][2] = {{0, 0}, {0, 0}, {0, 0}, {0, 0}};
};

struct HumanBaseline {
  std::vector<double> per_rater_mse;  // 4 entries
  double average_mse = 0.0;
};

// Per-rater MSE against the 8-score mean of each sample, scores scaled to
// [0, 1]. Throws Error(ShapeMismatch) on empty input; the fixed-size layout
// enforces the 8-score shape.
HumanBaseline human_baseline_mse(const std::vector<DuplicatedSample>& samples);

}  // namespace socnav::analysis
