#pragma once

#include "socnav/scene/types.hpp"

namespace socnav::scene {

// Picks the three snapshots used for graph construction: the final one plus
// the snapshots nearest to t_end - spacing and t_end - 2*spacing. Ties on
// the nearest timestamp break toward the later snapshot. Throws
// Error(TooShort) when the recorded span is below 2*spacing.
FrameTriple select_frames(const Scenario& s, double spacing_s = 1.0);

}  // namespace socnav::scene
