#pragma once

#include <string>
#include <vector>

#include "socnav/scene/types.hpp"

namespace socnav::scene {

enum class ViolationCode {
  TooFewSnapshots,
  NonIncreasingTime,
  LabelOutOfRange,
  WallsNotClosed,
  DegenerateWall,
  DanglingInteraction,
  InteractionSourceNotHuman,
  SelfInteraction,
  DuplicateEntityId,
  BadShape,
  ThetaOutOfRange,
  NonFiniteValue,
};

const char* violation_code_name(ViolationCode c);

struct Violation {
  ViolationCode code;
  std::string path;  // element that violates, e.g. /snapshots/3/humans/0
  std::string detail;
};

// Checks every scenario invariant. Returns an empty list iff the scenario
// is valid; violations are data, not errors.
std::vector<Violation> validate_scenario(const Scenario& s);

}  // namespace socnav::scene
