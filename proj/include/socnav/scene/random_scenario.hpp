#pragma once

#include <cstdint>

#include "socnav/scene/types.hpp"

namespace socnav::scene {

enum class RoomKind { Rectangular, LShaped };

// Deterministic synthetic scenario fixture: a room with a moving robot,
// humans and objects, a goal, and optional interactions, sampled from the
// given seed. Labels are produced by score_scenario below, so generated
// datasets carry a learnable geometric signal. The output always passes
// validate_scenario.
Scenario generate_random_scenario(uint64_t seed, int n_humans, int n_objects,
                                  RoomKind room_kind, int n_snapshots = 35,
                                  double duration_s = 4.0);

// Smooth heuristic labels on the scored (last) snapshot. Q1 grows with the
// robot's clearance from humans (tighter in crowded rooms); Q2 additionally
// rewards motion aligned with the goal direction.
void score_scenario(Scenario& s);

}  // namespace socnav::scene
