#pragma once

#include "socnav/scene/types.hpp"

namespace socnav::scene {

// Label-preserving data augmentation. Both transforms are involutions and
// keep every robot-relative distance unchanged.

// Reflects each snapshot across the robot's forward axis: in the robot
// frame, x -> -x, theta -> -theta, vx -> -vx, vtheta -> -vtheta. The robot
// pose is unchanged; its rotation command flips sign, advance is kept.
Scenario mirror(const Scenario& s);

// Rotates each snapshot half a turn about the robot position: relative
// positions negate, headings shift by pi, planar velocities negate, angular
// velocities are kept. The robot pose is unchanged; its advance command
// flips sign, rotation is kept.
Scenario rotate_half_turn(const Scenario& s);

}  // namespace socnav::scene
