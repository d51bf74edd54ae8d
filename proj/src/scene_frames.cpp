#include "socnav/scene/frames.hpp"

#include <cmath>

#include "socnav/common/error.hpp"

namespace socnav::scene {

namespace {

// Index of the snapshot whose timestamp is nearest to t; ties go later.
int nearest_index(const std::vector<Snapshot>& snaps, double t) {
  int best = 0;
  double best_dist = std::abs(snaps[0].timestamp - t);
  for (size_t i = 1; i < snaps.size(); ++i) {
    const double d = std::abs(snaps[i].timestamp - t);
    if (d <= best_dist) {  // <= : later snapshot wins ties
      best = static_cast<int>(i);
      best_dist = d;
    }
  }
  return best;
}

}  // namespace

FrameTriple select_frames(const Scenario& s, double spacing_s) {
  if (s.snapshots.size() < 3)
    throw Error(ErrorCode::TooShort, "select_frames: need at least 3 snapshots");
  const double t_end = s.snapshots.back().timestamp;
  const double span = t_end - s.snapshots.front().timestamp;
  if (span < 2.0 * spacing_s - 1e-12)
    throw Error(ErrorCode::TooShort, "select_frames: span shorter than 2x spacing");

  FrameTriple out;
  out.indices[2] = static_cast<int>(s.snapshots.size()) - 1;
  out.indices[1] = nearest_index(s.snapshots, t_end - spacing_s);
  out.indices[0] = nearest_index(s.snapshots, t_end - 2.0 * spacing_s);
  for (int f = 0; f < 3; ++f) out.frames[f] = &s.snapshots[out.indices[f]];
  return out;
}

}  // namespace socnav::scene
