#include "socnav/scene/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "socnav/common/error.hpp"
#include "socnav/scene/validate.hpp"

namespace socnav::scene {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::Schema, path + ": " + msg);
}

const json& member(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(path + "/" + key, "missing required field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  return j.get<int>();
}

Pose parse_pose(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) schema_error(path, "expected [x, y, theta]");
  return {number(j[0], path + "/0"), number(j[1], path + "/1"),
          number(j[2], path + "/2")};
}

Velocity parse_velocity(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) schema_error(path, "expected [vx, vy, vtheta]");
  return {number(j[0], path + "/0"), number(j[1], path + "/1"),
          number(j[2], path + "/2")};
}

Vec2 parse_vec2(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) schema_error(path, "expected [x, y]");
  return {number(j[0], path + "/0"), number(j[1], path + "/1")};
}

Snapshot parse_snapshot(const json& j, const std::string& path) {
  Snapshot snap;
  snap.timestamp = number(member(j, "timestamp", path), path + "/timestamp");

  const json& robot = member(j, "robot", path);
  snap.robot.pose = parse_pose(member(robot, "pose", path + "/robot"), path + "/robot/pose");
  const json& cmd = member(robot, "command", path + "/robot");
  if (!cmd.is_array() || cmd.size() != 2)
    schema_error(path + "/robot/command", "expected [adv, rot]");
  snap.robot.adv = number(cmd[0], path + "/robot/command/0");
  snap.robot.rot = number(cmd[1], path + "/robot/command/1");

  const json& humans = member(j, "humans", path);
  if (!humans.is_array()) schema_error(path + "/humans", "expected an array");
  for (size_t i = 0; i < humans.size(); ++i) {
    const std::string hp = path + "/humans/" + std::to_string(i);
    Human h;
    h.id = integer(member(humans[i], "id", hp), hp + "/id");
    h.pose = parse_pose(member(humans[i], "pose", hp), hp + "/pose");
    h.velocity = parse_velocity(member(humans[i], "velocity", hp), hp + "/velocity");
    snap.humans.push_back(h);
  }

  const json& objects = member(j, "objects", path);
  if (!objects.is_array()) schema_error(path + "/objects", "expected an array");
  for (size_t i = 0; i < objects.size(); ++i) {
    const std::string op = path + "/objects/" + std::to_string(i);
    ObjectEntity o;
    o.id = integer(member(objects[i], "id", op), op + "/id");
    o.pose = parse_pose(member(objects[i], "pose", op), op + "/pose");
    o.velocity = parse_velocity(member(objects[i], "velocity", op), op + "/velocity");
    const json& shape = member(objects[i], "shape", op);
    if (!shape.is_array() || shape.size() != 2)
      schema_error(op + "/shape", "expected [width, height]");
    o.width = number(shape[0], op + "/shape/0");
    o.height = number(shape[1], op + "/shape/1");
    snap.objects.push_back(o);
  }

  const json& walls = member(j, "walls", path);
  if (!walls.is_array()) schema_error(path + "/walls", "expected an array");
  for (size_t i = 0; i < walls.size(); ++i) {
    const std::string wp = path + "/walls/" + std::to_string(i);
    if (!walls[i].is_array() || walls[i].size() != 4)
      schema_error(wp, "expected [x1, y1, x2, y2]");
    WallSegment w;
    w.start = {number(walls[i][0], wp + "/0"), number(walls[i][1], wp + "/1")};
    w.end = {number(walls[i][2], wp + "/2"), number(walls[i][3], wp + "/3")};
    snap.walls.push_back(w);
  }

  snap.goal.position = parse_vec2(member(j, "goal", path), path + "/goal");

  if (j.contains("interactions")) {
    const json& inter = j["interactions"];
    if (!inter.is_array()) schema_error(path + "/interactions", "expected an array");
    for (size_t i = 0; i < inter.size(); ++i) {
      const std::string ip = path + "/interactions/" + std::to_string(i);
      if (!inter[i].is_array() || inter[i].size() != 2)
        schema_error(ip, "expected [source_id, target_id]");
      snap.interactions.push_back(
          {integer(inter[i][0], ip + "/0"), integer(inter[i][1], ip + "/1")});
    }
  }
  return snap;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Schema, std::string("syntax: ") + e.what());
  }

  const json& version = member(doc, "version", "");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion)
    throw Error(ErrorCode::VersionMismatch,
                "/version: expected " + std::to_string(kSchemaVersion));

  Scenario s;
  const json& id = member(doc, "id", "");
  if (!id.is_string()) schema_error("/id", "expected a string");
  s.id = id.get<std::string>();
  s.duration_s = number(member(doc, "duration_s", ""), "/duration_s");
  const json& labels = member(doc, "labels", "");
  s.label_q1 = number(member(labels, "q1", "/labels"), "/labels/q1");
  s.label_q2 = number(member(labels, "q2", "/labels"), "/labels/q2");

  const json& snaps = member(doc, "snapshots", "");
  if (!snaps.is_array()) schema_error("/snapshots", "expected an array");
  for (size_t i = 0; i < snaps.size(); ++i)
    s.snapshots.push_back(parse_snapshot(snaps[i], "/snapshots/" + std::to_string(i)));

  const auto violations = validate_scenario(s);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "semantic: " << violations.size() << " violation(s); first: "
        << violation_code_name(violations.front().code) << " at "
        << violations.front().path;
    throw Error(ErrorCode::Schema, msg.str());
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::Io, "cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string serialize_scenario(const Scenario& s) {
  json doc;
  doc["version"] = kSchemaVersion;
  doc["id"] = s.id;
  doc["duration_s"] = s.duration_s;
  doc["labels"] = {{"q1", s.label_q1}, {"q2", s.label_q2}};
  json snaps = json::array();
  for (const Snapshot& snap : s.snapshots) {
    json j;
    j["timestamp"] = snap.timestamp;
    j["robot"] = {{"pose", {snap.robot.pose.x, snap.robot.pose.y, snap.robot.pose.theta}},
                  {"command", {snap.robot.adv, snap.robot.rot}}};
    json humans = json::array();
    for (const Human& h : snap.humans)
      humans.push_back({{"id", h.id},
                        {"pose", {h.pose.x, h.pose.y, h.pose.theta}},
                        {"velocity", {h.velocity.vx, h.velocity.vy, h.velocity.vtheta}}});
    j["humans"] = std::move(humans);
    json objects = json::array();
    for (const ObjectEntity& o : snap.objects)
      objects.push_back({{"id", o.id},
                         {"pose", {o.pose.x, o.pose.y, o.pose.theta}},
                         {"velocity", {o.velocity.vx, o.velocity.vy, o.velocity.vtheta}},
                         {"shape", {o.width, o.height}}});
    j["objects"] = std::move(objects);
    json walls = json::array();
    for (const WallSegment& w : snap.walls)
      walls.push_back({w.start.x, w.start.y, w.end.x, w.end.y});
    j["walls"] = std::move(walls);
    j["goal"] = {snap.goal.position.x, snap.goal.position.y};
    json inter = json::array();
    for (const Interaction& it : snap.interactions)
      inter.push_back({it.source_id, it.target_id});
    j["interactions"] = std::move(inter);
    snaps.push_back(std::move(j));
  }
  doc["snapshots"] = std::move(snaps);
  return doc.dump(2);
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::Io, "cannot open for writing: " + path);
  os << serialize_scenario(s) << "\n";
  if (!os) throw Error(ErrorCode::Io, "short write: " + path);
}

}  // namespace socnav::scene
