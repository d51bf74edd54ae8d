#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace socnav::scene {

// Coordinate convention: world frame with x to the right and y up. Headings
// are measured counterclockwise from +y, so a heading of 0 points along +y
// and the direction vector of heading t is (-sin t, cos t). The robot frame
// uses the same convention with y forward (the direction of positive advance
// speed) and x to the robot's right.

constexpr double kPi = 3.14159265358979323846;

// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // heading, CCW from +y, in (-pi, pi]
};

struct Velocity {
  double vx = 0.0;
  double vy = 0.0;
  double vtheta = 0.0;
};

struct RobotState {
  Pose pose;
  double adv = 0.0;  // forward command, m/s
  double rot = 0.0;  // angular command, rad/s
};

struct Human {
  int id = 0;
  Pose pose;
  Velocity velocity;
};

struct ObjectEntity {
  int id = 0;
  Pose pose;
  Velocity velocity;
  double width = 0.0;
  double height = 0.0;
};

struct WallSegment {
  Vec2 start;
  Vec2 end;
};

struct GoalPoint {
  Vec2 position;
};

// A human (source) engaging with another human or an object (target).
struct Interaction {
  int source_id = 0;
  int target_id = 0;
};

struct Snapshot {
  double timestamp = 0.0;  // seconds from sequence start
  RobotState robot;
  std::vector<Human> humans;
  std::vector<ObjectEntity> objects;
  std::vector<WallSegment> walls;
  GoalPoint goal;
  std::vector<Interaction> interactions;
};

// A scored scene sequence: time-ordered snapshots plus the two labels on the
// 0..100 scale (Q1 disturbance, Q2 goal-efficient motion).
struct Scenario {
  std::string id;
  double duration_s = 4.0;
  double label_q1 = 0.0;
  double label_q2 = 0.0;
  std::vector<Snapshot> snapshots;
};

// The three snapshots fed to the graph builder, nominally 1 s apart; the
// last one is the scored instant.
struct FrameTriple {
  const Snapshot* frames[3] = {nullptr, nullptr, nullptr};
  int indices[3] = {0, 0, 0};
};

// --- frame transforms -------------------------------------------------

// Direction vector of a heading.
inline Vec2 heading_dir(double theta) { return {-std::sin(theta), std::cos(theta)}; }

// Heading whose direction vector is (dx, dy).
inline double dir_heading(double dx, double dy) { return std::atan2(-dx, dy); }

// World point expressed in the frame of `robot` (y forward, x right).
inline Vec2 to_robot_frame(const Pose& robot, const Vec2& p) {
  const double dx = p.x - robot.x;
  const double dy = p.y - robot.y;
  const double s = std::sin(robot.theta);
  const double c = std::cos(robot.theta);
  // x_r axis = (cos t, sin t), y_r axis = (-sin t, cos t)
  return {dx * c + dy * s, -dx * s + dy * c};
}

// Free vector (velocity) expressed in the robot frame.
inline Vec2 rotate_to_robot_frame(const Pose& robot, const Vec2& v) {
  const double s = std::sin(robot.theta);
  const double c = std::cos(robot.theta);
  return {v.x * c + v.y * s, -v.x * s + v.y * c};
}

// Inverse of to_robot_frame.
inline Vec2 to_world_frame(const Pose& robot, const Vec2& local) {
  const double s = std::sin(robot.theta);
  const double c = std::cos(robot.theta);
  return {robot.x + local.x * c - local.y * s, robot.y + local.x * s + local.y * c};
}

inline Vec2 rotate_to_world_frame(const Pose& robot, const Vec2& local) {
  const double s = std::sin(robot.theta);
  const double c = std::cos(robot.theta);
  return {local.x * c - local.y * s, local.x * s + local.y * c};
}

// Mean of the wall polygon vertices; the room node's reference point for
// distance features.
Vec2 room_reference(const std::vector<WallSegment>& walls);

}  // namespace socnav::scene
