#include "socnav/scene/random_scenario.hpp"

#include <algorithm>
#include <cmath>

#include "socnav/common/rng.hpp"

namespace socnav::scene {

namespace {

constexpr double kMargin = 0.4;

struct Room {
  RoomKind kind;
  double wx, wy;  // half extents

  std::vector<WallSegment> walls() const {
    if (kind == RoomKind::Rectangular)
      return {{{-wx, -wy}, {wx, -wy}},
              {{wx, -wy}, {wx, wy}},
              {{wx, wy}, {-wx, wy}},
              {{-wx, wy}, {-wx, -wy}}};
    // L shape: rectangle with the (+x, +y) quadrant removed.
    return {{{-wx, -wy}, {wx, -wy}},
            {{wx, -wy}, {wx, 0.0}},
            {{wx, 0.0}, {0.0, 0.0}},
            {{0.0, 0.0}, {0.0, wy}},
            {{0.0, wy}, {-wx, wy}},
            {{-wx, wy}, {-wx, -wy}}};
  }

  bool inside(double x, double y, double margin) const {
    if (x < -wx + margin || x > wx - margin || y < -wy + margin || y > wy - margin)
      return false;
    if (kind == RoomKind::LShaped && x > -margin && y > -margin) return false;
    return true;
  }

  Vec2 sample_inside(Rng& rng, double margin) const {
    for (;;) {
      const double x = rng.uniform(-wx + margin, wx - margin);
      const double y = rng.uniform(-wy + margin, wy - margin);
      if (inside(x, y, margin)) return {x, y};
    }
  }
};

// Keeps moving entities inside the room by reflecting velocity components.
void bounce(const Room& room, Vec2& p, double& vx, double& vy, double dt) {
  double nx = p.x + vx * dt;
  double ny = p.y + vy * dt;
  if (!room.inside(nx, p.y, kMargin)) vx = -vx;
  if (!room.inside(p.x, ny, kMargin)) vy = -vy;
  p.x = std::clamp(p.x + vx * dt, -room.wx + kMargin, room.wx - kMargin);
  p.y = std::clamp(p.y + vy * dt, -room.wy + kMargin, room.wy - kMargin);
  if (room.kind == RoomKind::LShaped && !room.inside(p.x, p.y, kMargin)) {
    // Fell into the cut quadrant; push back toward the nearer axis.
    if (p.x < p.y)
      p.x = std::min(p.x, -kMargin);
    else
      p.y = std::min(p.y, -kMargin);
  }
}

}  // namespace

void score_scenario(Scenario& s) {
  const Snapshot& scored = s.snapshots.back();
  const RobotState& robot = scored.robot;

  double d_min = 1e9;
  for (const Human& h : scored.humans) {
    const double d = std::hypot(h.pose.x - robot.pose.x, h.pose.y - robot.pose.y);
    d_min = std::min(d_min, d);
  }

  double q1;
  if (scored.humans.empty()) {
    q1 = 95.0;
  } else {
    // Crowded rooms tolerate closer passes.
    const double crowd = std::min<double>(static_cast<double>(scored.humans.size()), 8.0);
    const double comfort = 1.6 * (1.0 - 0.35 * crowd / 8.0);
    const double speed_push = 1.0 + 0.5 * std::abs(robot.adv);
    const double effective = d_min / (comfort * speed_push);
    q1 = 100.0 * (1.0 - std::exp(-1.2 * effective));
  }

  const double gx = scored.goal.position.x - robot.pose.x;
  const double gy = scored.goal.position.y - robot.pose.y;
  const double gdist = std::hypot(gx, gy);
  double progress = 0.5;  // neutral when stopped
  if (std::abs(robot.adv) > 0.05 && gdist > 1e-6) {
    const Vec2 fwd = heading_dir(robot.pose.theta);
    const double sgn = robot.adv >= 0.0 ? 1.0 : -1.0;
    const double align = (sgn * fwd.x * gx + sgn * fwd.y * gy) / gdist;
    progress = 0.5 + 0.5 * align;
  }
  if (gdist < 0.5) progress = std::max(progress, 0.8);
  const double q2 = (q1 / 100.0) * (10.0 + 90.0 * progress);

  s.label_q1 = std::clamp(q1, 0.0, 100.0);
  s.label_q2 = std::clamp(q2, 0.0, 100.0);
}

Scenario generate_random_scenario(uint64_t seed, int n_humans, int n_objects,
                                  RoomKind room_kind, int n_snapshots,
                                  double duration_s) {
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + 0x53c5ca59ULL);

  Room room{room_kind, rng.uniform(2.5, 4.5), rng.uniform(2.5, 4.5)};

  Scenario s;
  s.id = "synthetic-" + std::to_string(seed);
  s.duration_s = duration_s;

  Snapshot base;
  base.walls = room.walls();
  base.goal.position = room.sample_inside(rng, kMargin);

  base.robot.pose.x = room.sample_inside(rng, kMargin).x;
  base.robot.pose.y = room.sample_inside(rng, kMargin).y;
  base.robot.pose.theta = rng.uniform(-kPi, kPi);
  base.robot.adv = rng.uniform(-0.2, 0.6);
  base.robot.rot = rng.uniform(-0.5, 0.5);

  struct HumanMotion {
    Vec2 vel;
    double vtheta;
  };
  std::vector<HumanMotion> motions;
  for (int i = 0; i < n_humans; ++i) {
    Human h;
    h.id = i + 1;
    const Vec2 p = room.sample_inside(rng, kMargin);
    h.pose = {p.x, p.y, rng.uniform(-kPi, kPi)};
    HumanMotion m{{0.0, 0.0}, 0.0};
    if (rng.uniform() < 0.6) {
      const double speed = rng.uniform(0.1, 0.7);
      const Vec2 dir = heading_dir(h.pose.theta);
      m.vel = {speed * dir.x, speed * dir.y};
      m.vtheta = rng.uniform(-0.3, 0.3);
    }
    h.velocity = {m.vel.x, m.vel.y, m.vtheta};
    motions.push_back(m);
    base.humans.push_back(h);
  }

  for (int i = 0; i < n_objects; ++i) {
    ObjectEntity o;
    o.id = 101 + i;
    const Vec2 p = room.sample_inside(rng, kMargin);
    o.pose = {p.x, p.y, rng.uniform(-kPi, kPi)};
    o.velocity = {0.0, 0.0, 0.0};
    o.width = rng.uniform(0.3, 1.2);
    o.height = rng.uniform(0.3, 1.2);
    base.objects.push_back(o);
  }

  // Stable interaction pairs across the whole sequence.
  for (const Human& h : base.humans) {
    if (rng.uniform() >= 0.3) continue;
    std::vector<int> candidates;
    for (const Human& other : base.humans)
      if (other.id != h.id) candidates.push_back(other.id);
    for (const ObjectEntity& o : base.objects) candidates.push_back(o.id);
    if (candidates.empty()) continue;
    const int target = candidates[rng.bounded(candidates.size())];
    bool duplicate = false;
    for (const Interaction& it : base.interactions)
      duplicate = duplicate || (it.source_id == target && it.target_id == h.id);
    if (!duplicate) base.interactions.push_back({h.id, target});
  }

  const double dt = duration_s / static_cast<double>(n_snapshots - 1);
  Snapshot current = base;
  for (int k = 0; k < n_snapshots; ++k) {
    current.timestamp = dt * static_cast<double>(k);
    s.snapshots.push_back(current);

    // Advance to the next snapshot.
    RobotState& r = current.robot;
    r.pose.theta = wrap_angle(r.pose.theta + r.rot * dt);
    const Vec2 fwd = heading_dir(r.pose.theta);
    Vec2 rp{r.pose.x + fwd.x * r.adv * dt, r.pose.y + fwd.y * r.adv * dt};
    if (room.inside(rp.x, rp.y, kMargin)) {
      r.pose.x = rp.x;
      r.pose.y = rp.y;
    }
    for (size_t i = 0; i < current.humans.size(); ++i) {
      Human& h = current.humans[i];
      Vec2 p{h.pose.x, h.pose.y};
      bounce(room, p, motions[i].vel.x, motions[i].vel.y, dt);
      h.pose.x = p.x;
      h.pose.y = p.y;
      h.pose.theta = wrap_angle(h.pose.theta + motions[i].vtheta * dt);
      h.velocity = {motions[i].vel.x, motions[i].vel.y, motions[i].vtheta};
    }
  }

  score_scenario(s);
  return s;
}

}  // namespace socnav::scene
