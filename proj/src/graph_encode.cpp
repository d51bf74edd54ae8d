#include "socnav/graph/encode.hpp"

#include <cmath>

#include "socnav/common/error.hpp"

namespace socnav::graph {

using scene::Pose;
using scene::Snapshot;
using scene::Vec2;

scene::Vec2 entity_reference(const Snapshot& snap, EntityRef entity) {
  switch (entity.type) {
    case NodeType::Room:
      return scene::room_reference(snap.walls);
    case NodeType::Goal:
      return snap.goal.position;
    case NodeType::Wall: {
      const scene::WallSegment& w = snap.walls.at(entity.index);
      return {0.5 * (w.start.x + w.end.x), 0.5 * (w.start.y + w.end.y)};
    }
    case NodeType::Object: {
      const scene::ObjectEntity& o = snap.objects.at(entity.index);
      return {o.pose.x, o.pose.y};
    }
    case NodeType::Human: {
      const scene::Human& h = snap.humans.at(entity.index);
      return {h.pose.x, h.pose.y};
    }
  }
  throw Error(ErrorCode::IndexOutOfRange, "entity_reference: bad node type");
}

std::array<double, kFeatureWidth> encode_node_features(const Snapshot& snap,
                                                       EntityRef entity,
                                                       const scene::RobotState& robot,
                                                       int frame_index) {
  std::array<double, kFeatureWidth> row{};
  row[kTypeOffset + static_cast<int>(entity.type)] = 1.0;
  row[kFrameOffset + frame_index] = 1.0;

  const Pose& rp = robot.pose;
  switch (entity.type) {
    case NodeType::Room: {
      row[kRoomOffset + 0] = static_cast<double>(snap.humans.size()) / 10.0;
      row[kRoomOffset + 1] = robot.adv;
      row[kRoomOffset + 2] = robot.rot;
      break;
    }
    case NodeType::Human: {
      const scene::Human& h = snap.humans.at(entity.index);
      const Vec2 local = scene::to_robot_frame(rp, {h.pose.x, h.pose.y});
      const Vec2 v = scene::rotate_to_robot_frame(rp, {h.velocity.vx, h.velocity.vy});
      const double heading = scene::wrap_angle(h.pose.theta - rp.theta);
      row[kHumanOffset + 0] = local.x / 10.0;
      row[kHumanOffset + 1] = local.y / 10.0;
      row[kHumanOffset + 2] = v.x;
      row[kHumanOffset + 3] = v.y;
      row[kHumanOffset + 4] = h.velocity.vtheta;
      row[kHumanOffset + 5] = std::sin(heading);
      row[kHumanOffset + 6] = std::cos(heading);
      row[kHumanOffset + 7] = std::hypot(local.x, local.y) / 10.0;
      break;
    }
    case NodeType::Object: {
      const scene::ObjectEntity& o = snap.objects.at(entity.index);
      const Vec2 local = scene::to_robot_frame(rp, {o.pose.x, o.pose.y});
      const Vec2 v = scene::rotate_to_robot_frame(rp, {o.velocity.vx, o.velocity.vy});
      const double heading = scene::wrap_angle(o.pose.theta - rp.theta);
      row[kObjectOffset + 0] = local.x / 10.0;
      row[kObjectOffset + 1] = local.y / 10.0;
      row[kObjectOffset + 2] = v.x;
      row[kObjectOffset + 3] = v.y;
      row[kObjectOffset + 4] = o.velocity.vtheta;
      row[kObjectOffset + 5] = std::sin(heading);
      row[kObjectOffset + 6] = std::cos(heading);
      row[kObjectOffset + 7] = std::hypot(local.x, local.y) / 10.0;
      row[kObjectOffset + 8] = o.width / 10.0;
      row[kObjectOffset + 9] = o.height / 10.0;
      break;
    }
    case NodeType::Wall: {
      const scene::WallSegment& w = snap.walls.at(entity.index);
      const Vec2 centre{0.5 * (w.start.x + w.end.x), 0.5 * (w.start.y + w.end.y)};
      const Vec2 local = scene::to_robot_frame(rp, centre);
      // Orientation is the tangent direction of the segment.
      const Vec2 tangent = scene::rotate_to_robot_frame(
          rp, {w.end.x - w.start.x, w.end.y - w.start.y});
      const double heading = scene::dir_heading(tangent.x, tangent.y);
      row[kWallOffset + 0] = local.x / 10.0;
      row[kWallOffset + 1] = local.y / 10.0;
      row[kWallOffset + 2] = std::sin(heading);
      row[kWallOffset + 3] = std::cos(heading);
      row[kWallOffset + 4] = std::hypot(local.x, local.y) / 10.0;
      break;
    }
    case NodeType::Goal: {
      const Vec2 local = scene::to_robot_frame(rp, snap.goal.position);
      row[kGoalOffset + 0] = local.x / 10.0;
      row[kGoalOffset + 1] = local.y / 10.0;
      row[kGoalOffset + 2] = std::hypot(local.x, local.y) / 10.0;
      break;
    }
  }
  return row;
}

std::array<double, kEdgeFeatureWidth> encode_edge_feature_row(RelationType rel,
                                                              double distance_m) {
  std::array<double, kEdgeFeatureWidth> row{};
  row[static_cast<int>(rel)] = 1.0;
  row[kNumRelations] =
      (rel == RelationType::Self || rel == RelationType::Temporal)
          ? 0.0
          : distance_m / 10.0;
  return row;
}

}  // namespace socnav::graph
