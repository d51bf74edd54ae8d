#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "socnav/common/error.hpp"
#include "socnav/scene/augment.hpp"
#include "socnav/scene/frames.hpp"
#include "socnav/scene/json_io.hpp"
#include "socnav/scene/random_scenario.hpp"
#include "socnav/scene/validate.hpp"

using namespace socnav;
using namespace socnav::scene;

namespace {

// Minimal square-room scenario with the robot at the origin facing +y.
Scenario make_basic_scenario(int n_snapshots = 35, double duration = 4.0) {
  Scenario s;
  s.id = "basic";
  s.duration_s = duration;
  s.label_q1 = 50.0;
  s.label_q2 = 50.0;
  for (int i = 0; i < n_snapshots; ++i) {
    Snapshot snap;
    snap.timestamp = duration * i / (n_snapshots - 1);
    snap.robot.pose = {0.0, 0.0, 0.0};
    snap.robot.adv = 0.4;
    snap.robot.rot = 0.2;
    snap.walls = {{{-3, -3}, {3, -3}},
                  {{3, -3}, {3, 3}},
                  {{3, 3}, {-3, 3}},
                  {{-3, 3}, {-3, -3}}};
    snap.goal.position = {1.0, 2.0};
    s.snapshots.push_back(snap);
  }
  return s;
}

bool scenarios_close(const Scenario& a, const Scenario& b, double tol) {
  if (a.snapshots.size() != b.snapshots.size()) return false;
  for (size_t i = 0; i < a.snapshots.size(); ++i) {
    const Snapshot& x = a.snapshots[i];
    const Snapshot& y = b.snapshots[i];
    if (std::abs(x.robot.pose.x - y.robot.pose.x) > tol) return false;
    if (std::abs(x.robot.pose.theta - y.robot.pose.theta) > tol) return false;
    if (std::abs(x.robot.adv - y.robot.adv) > tol) return false;
    if (std::abs(x.robot.rot - y.robot.rot) > tol) return false;
    if (x.humans.size() != y.humans.size()) return false;
    for (size_t h = 0; h < x.humans.size(); ++h) {
      if (std::abs(x.humans[h].pose.x - y.humans[h].pose.x) > tol) return false;
      if (std::abs(x.humans[h].pose.y - y.humans[h].pose.y) > tol) return false;
      if (std::abs(wrap_angle(x.humans[h].pose.theta - y.humans[h].pose.theta)) > tol)
        return false;
      if (std::abs(x.humans[h].velocity.vx - y.humans[h].velocity.vx) > tol) return false;
      if (std::abs(x.humans[h].velocity.vtheta - y.humans[h].velocity.vtheta) > tol)
        return false;
    }
    for (size_t w = 0; w < x.walls.size(); ++w) {
      if (std::abs(x.walls[w].start.x - y.walls[w].start.x) > tol) return false;
      if (std::abs(x.walls[w].end.y - y.walls[w].end.y) > tol) return false;
    }
    if (std::abs(x.goal.position.x - y.goal.position.x) > tol) return false;
    if (std::abs(x.goal.position.y - y.goal.position.y) > tol) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("parse accepts a minimal well-formed document") {
  const Scenario s = make_basic_scenario();
  const Scenario parsed = parse_scenario(serialize_scenario(s));
  CHECK(parsed.snapshots.size() == 35);
  CHECK(parsed.label_q1 == 50.0);
  CHECK(parsed.id == "basic");
  CHECK(validate_scenario(parsed).empty());
}

TEST_CASE("parse rejects truncated and malformed input") {
  const std::string text = serialize_scenario(make_basic_scenario());
  const std::string truncated = text.substr(0, text.size() / 2);
  CHECK_THROWS_AS((void)parse_scenario(truncated), Error);

  CHECK_THROWS_WITH_AS((void)parse_scenario("{\"version\": 1}"),
                       doctest::Contains("version"), Error);

  // Missing required field carries the offending path.
  try {
    (void)parse_scenario(
        R"({"version":2,"id":"x","duration_s":4,"labels":{"q1":1,"q2":1},
           "snapshots":[{"timestamp":0}]})");
    FAIL("expected schema error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Schema);
    CHECK(std::string(e.what()).find("/snapshots/0") != std::string::npos);
  }
}

TEST_CASE("parse ignores unknown keys") {
  const Scenario s = make_basic_scenario(3, 2.0);
  std::string text = serialize_scenario(s);
  text.insert(text.find("\"id\""), "\"future_extension\": {\"a\": 1},\n", 0,
              std::string::npos);
  const Scenario parsed = parse_scenario(text);
  CHECK(parsed.snapshots.size() == 3);
}

TEST_CASE("parse round-trips every field") {
  const Scenario s = generate_random_scenario(42, 4, 2, RoomKind::LShaped);
  const Scenario parsed = parse_scenario(serialize_scenario(s));
  CHECK(serialize_scenario(parsed) == serialize_scenario(s));
}

TEST_CASE("validate: open wall polygon and dangling interaction") {
  Scenario s = make_basic_scenario(3, 2.0);
  CHECK(validate_scenario(s).empty());

  Scenario open_walls = s;
  for (auto& snap : open_walls.snapshots) snap.walls[1].end.x += 0.5;
  auto violations = validate_scenario(open_walls);
  REQUIRE(!violations.empty());
  bool found = false;
  for (const auto& v : violations)
    found = found || v.code == ViolationCode::WallsNotClosed;
  CHECK(found);

  Scenario dangling = s;
  dangling.snapshots[0].interactions.push_back({99, 1});
  violations = validate_scenario(dangling);
  REQUIRE(!violations.empty());
  found = false;
  for (const auto& v : violations)
    found = found || v.code == ViolationCode::DanglingInteraction;
  CHECK(found);
}

TEST_CASE("validate: labels, duplicate ids, interaction source type") {
  Scenario s = make_basic_scenario(3, 2.0);
  s.label_q1 = 150.0;
  auto violations = validate_scenario(s);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].code == ViolationCode::LabelOutOfRange);

  Scenario dup = make_basic_scenario(3, 2.0);
  for (auto& snap : dup.snapshots) {
    snap.humans.push_back({7, {1, 1, 0}, {0, 0, 0}});
    snap.humans.push_back({7, {2, 1, 0}, {0, 0, 0}});
  }
  bool found = false;
  for (const auto& v : validate_scenario(dup))
    found = found || v.code == ViolationCode::DuplicateEntityId;
  CHECK(found);

  Scenario obj_source = make_basic_scenario(3, 2.0);
  for (auto& snap : obj_source.snapshots) {
    snap.humans.push_back({1, {1, 1, 0}, {0, 0, 0}});
    snap.objects.push_back({101, {2, 1, 0}, {0, 0, 0}, 0.5, 0.5});
    snap.interactions.push_back({101, 1});  // object as source
  }
  found = false;
  for (const auto& v : validate_scenario(obj_source))
    found = found || v.code == ViolationCode::InteractionSourceNotHuman;
  CHECK(found);
}

TEST_CASE("mirror: reflection formulas with identity robot pose") {
  Scenario s = make_basic_scenario(3, 2.0);
  for (auto& snap : s.snapshots) {
    snap.humans.push_back({1, {1.0, 2.0, kPi / 2}, {0.3, 0.1, 0.2}});
  }
  const Scenario m = mirror(s);
  const Human& h = m.snapshots[0].humans[0];
  CHECK(h.pose.x == doctest::Approx(-1.0));
  CHECK(h.pose.y == doctest::Approx(2.0));
  CHECK(h.pose.theta == doctest::Approx(-kPi / 2));
  CHECK(h.velocity.vx == doctest::Approx(-0.3));
  CHECK(h.velocity.vy == doctest::Approx(0.1));
  CHECK(h.velocity.vtheta == doctest::Approx(-0.2));
  CHECK(m.snapshots[0].robot.adv == doctest::Approx(0.4));
  CHECK(m.snapshots[0].robot.rot == doctest::Approx(-0.2));
  CHECK(m.label_q1 == s.label_q1);
  CHECK(m.label_q2 == s.label_q2);
}

TEST_CASE("rotate_half_turn: formulas with identity robot pose") {
  Scenario s = make_basic_scenario(3, 2.0);
  for (auto& snap : s.snapshots)
    snap.humans.push_back({1, {1.0, 2.0, 0.3}, {0.2, -0.1, 0.15}});
  const Scenario r = rotate_half_turn(s);
  const Human& h = r.snapshots[0].humans[0];
  CHECK(h.pose.x == doctest::Approx(-1.0));
  CHECK(h.pose.y == doctest::Approx(-2.0));
  CHECK(h.pose.theta == doctest::Approx(wrap_angle(0.3 + kPi)));
  CHECK(h.velocity.vx == doctest::Approx(-0.2));
  CHECK(h.velocity.vy == doctest::Approx(0.1));
  CHECK(h.velocity.vtheta == doctest::Approx(0.15));
  CHECK(r.snapshots[0].robot.adv == doctest::Approx(-0.4));
  CHECK(r.snapshots[0].robot.rot == doctest::Approx(0.2));
}

TEST_CASE("mirror and rotate are involutions and preserve robot distances") {
  for (uint64_t seed : {3u, 17u, 99u}) {
    const Scenario s = generate_random_scenario(seed, 5, 2, RoomKind::Rectangular, 7, 4.0);
    CHECK(scenarios_close(mirror(mirror(s)), s, 1e-12));
    CHECK(scenarios_close(rotate_half_turn(rotate_half_turn(s)), s, 1e-12));

    for (const Scenario& t : {mirror(s), rotate_half_turn(s)}) {
      for (size_t i = 0; i < s.snapshots.size(); ++i) {
        const auto& orig = s.snapshots[i];
        const auto& moved = t.snapshots[i];
        for (size_t h = 0; h < orig.humans.size(); ++h) {
          const double d0 = std::hypot(orig.humans[h].pose.x - orig.robot.pose.x,
                                       orig.humans[h].pose.y - orig.robot.pose.y);
          const double d1 = std::hypot(moved.humans[h].pose.x - moved.robot.pose.x,
                                       moved.humans[h].pose.y - moved.robot.pose.y);
          CHECK(d0 == doctest::Approx(d1).epsilon(1e-12));
        }
        const double g0 = std::hypot(orig.goal.position.x - orig.robot.pose.x,
                                     orig.goal.position.y - orig.robot.pose.y);
        const double g1 = std::hypot(moved.goal.position.x - moved.robot.pose.x,
                                     moved.goal.position.y - moved.robot.pose.y);
        CHECK(g0 == doctest::Approx(g1).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("mirror preserves wall polygon closure") {
  const Scenario s = generate_random_scenario(7, 2, 1, RoomKind::LShaped, 5, 4.0);
  const Scenario m = mirror(s);
  CHECK(validate_scenario(m).empty());
}

TEST_CASE("select_frames on the canonical 35-snapshot sequence") {
  const Scenario s = make_basic_scenario();
  const FrameTriple triple = select_frames(s);
  // Brute-force nearest indices to t = 2, 3, 4 over the 35 timestamps;
  // t = 3 sits exactly between snapshots 25 and 26 and ties go later.
  CHECK(triple.indices[0] == 17);
  CHECK(triple.indices[1] == 26);
  CHECK(triple.indices[2] == 34);
}

TEST_CASE("select_frames exact timestamps and precondition") {
  Scenario s = make_basic_scenario(3, 2.0);
  const FrameTriple triple = select_frames(s);
  CHECK(triple.indices[0] == 0);
  CHECK(triple.indices[1] == 1);
  CHECK(triple.indices[2] == 2);

  const Scenario brief = make_basic_scenario(10, 1.0);
  CHECK_THROWS_AS((void)select_frames(brief), Error);
}

TEST_CASE("select_frames always returns the last snapshot as frames[2]") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 3 + static_cast<int>(seed % 40);
    const Scenario s = generate_random_scenario(seed, 1, 0, RoomKind::Rectangular,
                                                std::max(n, 3), 4.0);
    const FrameTriple triple = select_frames(s);
    CHECK(triple.indices[2] == static_cast<int>(s.snapshots.size()) - 1);
    CHECK(triple.frames[2] == &s.snapshots.back());
  }
}

TEST_CASE("generator: determinism and empty-room case") {
  const Scenario a = generate_random_scenario(0, 0, 0, RoomKind::Rectangular);
  CHECK(a.snapshots.size() == 35);
  CHECK(a.snapshots[0].humans.empty());
  CHECK(a.snapshots[0].objects.empty());
  CHECK(validate_scenario(a).empty());

  const Scenario b = generate_random_scenario(0, 0, 0, RoomKind::Rectangular);
  CHECK(serialize_scenario(a) == serialize_scenario(b));
}

TEST_CASE("generator: L-shaped room has six walls and validates") {
  const Scenario s = generate_random_scenario(7, 4, 2, RoomKind::LShaped);
  CHECK(s.snapshots[0].walls.size() >= 6);
  CHECK(validate_scenario(s).empty());
}

TEST_CASE("generator output validates across 1000 seeds") {
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    const Scenario s = generate_random_scenario(
        seed, static_cast<int>(seed % 5), static_cast<int>(seed % 3),
        seed % 2 ? RoomKind::LShaped : RoomKind::Rectangular, 5, 4.0);
    const auto violations = validate_scenario(s);
    if (!violations.empty()) {
      CAPTURE(seed);
      CAPTURE(violations[0].path);
      FAIL_CHECK(violation_code_name(violations[0].code));
      break;
    }
  }
}
