#include "socnav/scene/validate.hpp"

#include <cmath>
#include <set>

namespace socnav::scene {

namespace {

constexpr double kClosedTol = 1e-9;

bool finite(double v) { return std::isfinite(v); }

std::string snap_path(size_t i) { return "/snapshots/" + std::to_string(i); }

}  // namespace

const char* violation_code_name(ViolationCode c) {
  switch (c) {
    case ViolationCode::TooFewSnapshots: return "TOO_FEW_SNAPSHOTS";
    case ViolationCode::NonIncreasingTime: return "NON_INCREASING_TIME";
    case ViolationCode::LabelOutOfRange: return "LABEL_OUT_OF_RANGE";
    case ViolationCode::WallsNotClosed: return "WALLS_NOT_CLOSED";
    case ViolationCode::DegenerateWall: return "DEGENERATE_WALL";
    case ViolationCode::DanglingInteraction: return "DANGLING_INTERACTION";
    case ViolationCode::InteractionSourceNotHuman: return "INTERACTION_SOURCE_NOT_HUMAN";
    case ViolationCode::SelfInteraction: return "SELF_INTERACTION";
    case ViolationCode::DuplicateEntityId: return "DUPLICATE_ENTITY_ID";
    case ViolationCode::BadShape: return "BAD_SHAPE";
    case ViolationCode::ThetaOutOfRange: return "THETA_OUT_OF_RANGE";
    case ViolationCode::NonFiniteValue: return "NON_FINITE_VALUE";
  }
  return "UNKNOWN";
}

std::vector<Violation> validate_scenario(const Scenario& s) {
  std::vector<Violation> out;
  auto add = [&out](ViolationCode code, std::string path, std::string detail = {}) {
    out.push_back({code, std::move(path), std::move(detail)});
  };

  if (s.snapshots.size() < 3)
    add(ViolationCode::TooFewSnapshots, "/snapshots",
        "need at least 3, have " + std::to_string(s.snapshots.size()));
  if (!(s.label_q1 >= 0.0 && s.label_q1 <= 100.0))
    add(ViolationCode::LabelOutOfRange, "/labels/q1");
  if (!(s.label_q2 >= 0.0 && s.label_q2 <= 100.0))
    add(ViolationCode::LabelOutOfRange, "/labels/q2");

  for (size_t i = 0; i + 1 < s.snapshots.size(); ++i)
    if (!(s.snapshots[i].timestamp < s.snapshots[i + 1].timestamp))
      add(ViolationCode::NonIncreasingTime, snap_path(i + 1) + "/timestamp");

  for (size_t i = 0; i < s.snapshots.size(); ++i) {
    const Snapshot& snap = s.snapshots[i];
    const std::string base = snap_path(i);

    auto check_theta = [&](double theta, const std::string& path) {
      if (!finite(theta))
        add(ViolationCode::NonFiniteValue, path);
      else if (!(theta > -kPi - 1e-12 && theta <= kPi + 1e-12))
        add(ViolationCode::ThetaOutOfRange, path);
    };
    auto check_finite = [&](double v, const std::string& path) {
      if (!finite(v)) add(ViolationCode::NonFiniteValue, path);
    };

    check_theta(snap.robot.pose.theta, base + "/robot/pose");
    check_finite(snap.robot.pose.x, base + "/robot/pose");
    check_finite(snap.robot.pose.y, base + "/robot/pose");
    check_finite(snap.robot.adv, base + "/robot/command");
    check_finite(snap.robot.rot, base + "/robot/command");
    check_finite(snap.goal.position.x, base + "/goal");
    check_finite(snap.goal.position.y, base + "/goal");

    std::set<int> ids;
    for (size_t h = 0; h < snap.humans.size(); ++h) {
      const std::string path = base + "/humans/" + std::to_string(h);
      if (!ids.insert(snap.humans[h].id).second)
        add(ViolationCode::DuplicateEntityId, path,
            "id " + std::to_string(snap.humans[h].id));
      check_theta(snap.humans[h].pose.theta, path + "/pose");
      check_finite(snap.humans[h].pose.x, path + "/pose");
      check_finite(snap.humans[h].pose.y, path + "/pose");
    }
    for (size_t o = 0; o < snap.objects.size(); ++o) {
      const std::string path = base + "/objects/" + std::to_string(o);
      if (!ids.insert(snap.objects[o].id).second)
        add(ViolationCode::DuplicateEntityId, path,
            "id " + std::to_string(snap.objects[o].id));
      check_theta(snap.objects[o].pose.theta, path + "/pose");
      if (!(snap.objects[o].width > 0.0) || !(snap.objects[o].height > 0.0))
        add(ViolationCode::BadShape, path + "/shape");
    }

    // Walls must chain into a closed polygon.
    for (size_t w = 0; w < snap.walls.size(); ++w) {
      const WallSegment& seg = snap.walls[w];
      const std::string path = base + "/walls/" + std::to_string(w);
      if (std::abs(seg.start.x - seg.end.x) < kClosedTol &&
          std::abs(seg.start.y - seg.end.y) < kClosedTol)
        add(ViolationCode::DegenerateWall, path);
      const WallSegment& next = s.snapshots[i].walls[(w + 1) % snap.walls.size()];
      if (std::abs(seg.end.x - next.start.x) > kClosedTol ||
          std::abs(seg.end.y - next.start.y) > kClosedTol)
        add(ViolationCode::WallsNotClosed, path);
    }

    std::set<int> human_ids;
    for (const auto& h : snap.humans) human_ids.insert(h.id);
    for (size_t k = 0; k < snap.interactions.size(); ++k) {
      const Interaction& it = snap.interactions[k];
      const std::string path = base + "/interactions/" + std::to_string(k);
      if (it.source_id == it.target_id) add(ViolationCode::SelfInteraction, path);
      if (!human_ids.count(it.source_id)) {
        if (ids.count(it.source_id))
          add(ViolationCode::InteractionSourceNotHuman, path,
              "source " + std::to_string(it.source_id));
        else
          add(ViolationCode::DanglingInteraction, path,
              "source " + std::to_string(it.source_id));
      }
      if (!ids.count(it.target_id))
        add(ViolationCode::DanglingInteraction, path,
            "target " + std::to_string(it.target_id));
    }
  }
  return out;
}

}  // namespace socnav::scene
