#include "socnav/scene/augment.hpp"

namespace socnav::scene {

namespace {

Vec2 mirror_point(const Pose& robot, const Vec2& p) {
  Vec2 local = to_robot_frame(robot, p);
  local.x = -local.x;
  return to_world_frame(robot, local);
}

Vec2 mirror_vector(const Pose& robot, const Vec2& v) {
  Vec2 local = rotate_to_robot_frame(robot, v);
  local.x = -local.x;
  return rotate_to_world_frame(robot, local);
}

double mirror_heading(const Pose& robot, double theta) {
  return wrap_angle(robot.theta - (theta - robot.theta));
}

Vec2 flip_point(const Pose& robot, const Vec2& p) {
  return {2.0 * robot.x - p.x, 2.0 * robot.y - p.y};
}

}  // namespace

Scenario mirror(const Scenario& s) {
  Scenario out = s;
  for (Snapshot& snap : out.snapshots) {
    const Pose robot = snap.robot.pose;
    for (Human& h : snap.humans) {
      const Vec2 p = mirror_point(robot, {h.pose.x, h.pose.y});
      h.pose.x = p.x;
      h.pose.y = p.y;
      h.pose.theta = mirror_heading(robot, h.pose.theta);
      const Vec2 v = mirror_vector(robot, {h.velocity.vx, h.velocity.vy});
      h.velocity.vx = v.x;
      h.velocity.vy = v.y;
      h.velocity.vtheta = -h.velocity.vtheta;
    }
    for (ObjectEntity& o : snap.objects) {
      const Vec2 p = mirror_point(robot, {o.pose.x, o.pose.y});
      o.pose.x = p.x;
      o.pose.y = p.y;
      o.pose.theta = mirror_heading(robot, o.pose.theta);
      const Vec2 v = mirror_vector(robot, {o.velocity.vx, o.velocity.vy});
      o.velocity.vx = v.x;
      o.velocity.vy = v.y;
      o.velocity.vtheta = -o.velocity.vtheta;
    }
    for (WallSegment& w : snap.walls) {
      w.start = mirror_point(robot, w.start);
      w.end = mirror_point(robot, w.end);
    }
    snap.goal.position = mirror_point(robot, snap.goal.position);
    snap.robot.rot = -snap.robot.rot;
  }
  return out;
}

Scenario rotate_half_turn(const Scenario& s) {
  Scenario out = s;
  for (Snapshot& snap : out.snapshots) {
    const Pose robot = snap.robot.pose;
    for (Human& h : snap.humans) {
      const Vec2 p = flip_point(robot, {h.pose.x, h.pose.y});
      h.pose.x = p.x;
      h.pose.y = p.y;
      h.pose.theta = wrap_angle(h.pose.theta + kPi);
      h.velocity.vx = -h.velocity.vx;
      h.velocity.vy = -h.velocity.vy;
    }
    for (ObjectEntity& o : snap.objects) {
      const Vec2 p = flip_point(robot, {o.pose.x, o.pose.y});
      o.pose.x = p.x;
      o.pose.y = p.y;
      o.pose.theta = wrap_angle(o.pose.theta + kPi);
      o.velocity.vx = -o.velocity.vx;
      o.velocity.vy = -o.velocity.vy;
    }
    for (WallSegment& w : snap.walls) {
      w.start = flip_point(robot, w.start);
      w.end = flip_point(robot, w.end);
    }
    snap.goal.position = flip_point(robot, snap.goal.position);
    snap.robot.adv = -snap.robot.adv;
  }
  return out;
}

}  // namespace socnav::scene
