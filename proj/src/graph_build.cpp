#include "socnav/graph/build.hpp"

#include <cmath>
#include <cstring>
#include <map>

#include "socnav/common/error.hpp"
#include "socnav/scene/frames.hpp"

namespace socnav::graph {

using scene::Snapshot;
using scene::Vec2;

namespace {

// Temporal matching keys for nodes without an entity id.
constexpr int kRoomKey = -1;
constexpr int kGoalKey = -2;
int wall_key(int index) { return -(3 + index); }

RelationType to_room_relation(NodeType t) {
  switch (t) {
    case NodeType::Human: return RelationType::HumanRoom;
    case NodeType::Object: return RelationType::ObjectRoom;
    case NodeType::Wall: return RelationType::WallRoom;
    case NodeType::Goal: return RelationType::GoalRoom;
    default: throw Error(ErrorCode::UnknownRelation, "no room relation for room");
  }
}

RelationType from_room_relation(NodeType t) {
  switch (t) {
    case NodeType::Human: return RelationType::RoomHuman;
    case NodeType::Object: return RelationType::RoomObject;
    case NodeType::Wall: return RelationType::RoomWall;
    case NodeType::Goal: return RelationType::RoomGoal;
    default: throw Error(ErrorCode::UnknownRelation, "no room relation for room");
  }
}

}  // namespace

FrameFragment build_frame_graph(const Snapshot& snap, int frame_index) {
  FrameFragment frag;
  frag.frame_index = frame_index;

  auto add_node = [&frag, &snap](NodeType type, int list_index, int key) {
    frag.node_types.push_back(type);
    frag.entity_keys.push_back(key);
    frag.ref_points.push_back(entity_reference(snap, {type, list_index}));
    return static_cast<int>(frag.node_types.size()) - 1;
  };

  const int room = add_node(NodeType::Room, 0, kRoomKey);
  for (size_t w = 0; w < snap.walls.size(); ++w)
    add_node(NodeType::Wall, static_cast<int>(w), wall_key(static_cast<int>(w)));
  add_node(NodeType::Goal, 0, kGoalKey);
  std::map<int, int> node_of_entity;  // entity id -> node index
  for (size_t o = 0; o < snap.objects.size(); ++o)
    node_of_entity[snap.objects[o].id] =
        add_node(NodeType::Object, static_cast<int>(o), snap.objects[o].id);
  for (size_t h = 0; h < snap.humans.size(); ++h)
    node_of_entity[snap.humans[h].id] =
        add_node(NodeType::Human, static_cast<int>(h), snap.humans[h].id);

  const int n = static_cast<int>(frag.node_types.size());
  for (int i = 0; i < n; ++i)
    frag.edges.push_back({i, i, RelationType::Self});
  for (int i = 0; i < n; ++i) {
    if (i == room) continue;
    frag.edges.push_back({i, room, to_room_relation(frag.node_types[i])});
    frag.edges.push_back({room, i, from_room_relation(frag.node_types[i])});
  }
  for (const scene::Interaction& it : snap.interactions) {
    const auto src = node_of_entity.find(it.source_id);
    const auto dst = node_of_entity.find(it.target_id);
    if (src == node_of_entity.end() || dst == node_of_entity.end())
      throw Error(ErrorCode::IndexOutOfRange,
                  "interaction references a missing entity id");
    const bool target_is_human = frag.node_types[dst->second] == NodeType::Human;
    if (target_is_human) {
      frag.edges.push_back({src->second, dst->second, RelationType::InteractsHH});
      frag.edges.push_back({dst->second, src->second, RelationType::InteractsHH});
    } else {
      frag.edges.push_back({src->second, dst->second, RelationType::InteractsHO});
      frag.edges.push_back({dst->second, src->second, RelationType::InteractsOH});
    }
  }

  frag.features = ad::Tensor(n, kFeatureWidth);
  int node = 0;
  auto write_row = [&frag, &snap, frame_index, &node](NodeType type, int list_index) {
    const auto row = encode_node_features(snap, {type, list_index}, snap.robot, frame_index);
    std::memcpy(frag.features.data() + static_cast<int64_t>(node) * kFeatureWidth,
                row.data(), sizeof(double) * kFeatureWidth);
    ++node;
  };
  write_row(NodeType::Room, 0);
  for (size_t w = 0; w < snap.walls.size(); ++w) write_row(NodeType::Wall, static_cast<int>(w));
  write_row(NodeType::Goal, 0);
  for (size_t o = 0; o < snap.objects.size(); ++o) write_row(NodeType::Object, static_cast<int>(o));
  for (size_t h = 0; h < snap.humans.size(); ++h) write_row(NodeType::Human, static_cast<int>(h));

  return frag;
}

SocialGraph merge_temporal(const std::array<FrameFragment, 3>& frames) {
  // Ids must keep their node type across frames.
  std::map<int, NodeType> id_type;
  for (const FrameFragment& f : frames)
    for (size_t i = 0; i < f.node_types.size(); ++i) {
      const int key = f.entity_keys[i];
      if (key < 0) continue;  // room/goal/wall keys are type-specific already
      auto [it, inserted] = id_type.emplace(key, f.node_types[i]);
      if (!inserted && it->second != f.node_types[i])
        throw Error(ErrorCode::EntityMismatch,
                    "entity id " + std::to_string(key) +
                        " changes node type between frames");
    }

  SocialGraph g;
  int offsets[3];
  int total = 0;
  for (int f = 0; f < 3; ++f) {
    offsets[f] = total;
    total += static_cast<int>(frames[f].node_types.size());
  }
  g.num_nodes = total;
  g.node_features = ad::Tensor(total, kFeatureWidth);

  std::vector<Vec2> ref_points(static_cast<size_t>(total));
  for (int f = 0; f < 3; ++f) {
    const FrameFragment& frag = frames[f];
    const int n = static_cast<int>(frag.node_types.size());
    for (int i = 0; i < n; ++i) {
      g.node_types.push_back(frag.node_types[i]);
      g.frame_index.push_back(f);
      g.entity_ids.push_back(frag.entity_keys[i]);
      ref_points[static_cast<size_t>(offsets[f] + i)] = frag.ref_points[i];
      if (frag.node_types[i] == NodeType::Room)
        g.room_node_index_per_frame[f] = offsets[f] + i;
    }
    std::memcpy(g.node_features.data() + static_cast<int64_t>(offsets[f]) * kFeatureWidth,
                frag.features.data(),
                sizeof(double) * static_cast<size_t>(n) * kFeatureWidth);
    for (const Edge& e : frag.edges)
      g.edges.push_back({e.src + offsets[f], e.dst + offsets[f], e.rel});
  }

  // One directed temporal edge per persistent entity per frame transition.
  for (int f = 0; f < 2; ++f) {
    const FrameFragment& a = frames[f];
    const FrameFragment& b = frames[f + 1];
    std::map<int, int> later;  // key -> node index in frame f+1
    for (size_t i = 0; i < b.entity_keys.size(); ++i)
      later[b.entity_keys[i]] = offsets[f + 1] + static_cast<int>(i);
    for (size_t i = 0; i < a.entity_keys.size(); ++i) {
      const auto it = later.find(a.entity_keys[i]);
      if (it == later.end()) continue;
      g.edges.push_back(
          {offsets[f] + static_cast<int>(i), it->second, RelationType::Temporal});
    }
  }

  g.edge_features = ad::Tensor(g.num_edges(), kEdgeFeatureWidth);
  for (int k = 0; k < g.num_edges(); ++k) {
    const Edge& e = g.edges[static_cast<size_t>(k)];
    const Vec2& ps = ref_points[static_cast<size_t>(e.src)];
    const Vec2& pd = ref_points[static_cast<size_t>(e.dst)];
    const double dist = std::hypot(ps.x - pd.x, ps.y - pd.y);
    const auto row = encode_edge_feature_row(e.rel, dist);
    std::memcpy(g.edge_features.data() + static_cast<int64_t>(k) * kEdgeFeatureWidth,
                row.data(), sizeof(double) * kEdgeFeatureWidth);
  }
  return g;
}

SocialGraph triple_to_graph(const scene::FrameTriple& triple, const std::string& id,
                            double label_q1_raw, double label_q2_raw) {
  std::array<FrameFragment, 3> frags = {build_frame_graph(*triple.frames[0], 0),
                                        build_frame_graph(*triple.frames[1], 1),
                                        build_frame_graph(*triple.frames[2], 2)};
  SocialGraph g = merge_temporal(frags);
  g.scenario_id = id;
  g.label_q1 = label_q1_raw / 100.0;
  g.label_q2 = label_q2_raw / 100.0;
  return g;
}

SocialGraph scenario_to_graph(const scene::Scenario& s, double spacing_s) {
  return triple_to_graph(scene::select_frames(s, spacing_s), s.id, s.label_q1,
                         s.label_q2);
}

}  // namespace socnav::graph
