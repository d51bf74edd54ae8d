#pragma once

#include <array>
#include <string>
#include <vector>

#include "socnav/ad/tensor.hpp"
#include "socnav/kernels/kernels.hpp"

namespace socnav::graph {

// Fixed one-hot ordering of node types.
enum class NodeType : int { Room = 0, Wall = 1, Goal = 2, Object = 3, Human = 4 };
constexpr int kNumNodeTypes = 5;

// Directed relation labels; every edge carries exactly one.
enum class RelationType : int {
  Self = 0,
  Temporal = 1,
  InteractsHH = 2,
  InteractsHO = 3,
  InteractsOH = 4,
  HumanRoom = 5,
  RoomHuman = 6,
  ObjectRoom = 7,
  RoomObject = 8,
  WallRoom = 9,
  RoomWall = 10,
  GoalRoom = 11,
  RoomGoal = 12,
};
constexpr int kNumRelations = 13;

const char* node_type_name(NodeType t);
const char* relation_name(RelationType r);

// Node feature layout: 37 columns.
//   [0..4]   node-type one-hot
//   [5..7]   frame one-hot
//   [8..10]  room:   n_humans/10, adv, rot
//   [11..18] human:  pos x, pos y, vx, vy, vtheta, sin, cos, distance
//   [19..28] object: pos x, pos y, vx, vy, vtheta, sin, cos, distance, w, h
//   [29..33] wall:   centre x, centre y, sin, cos, distance
//   [34..36] goal:   pos x, pos y, distance
// Metric values are in the robot frame and divided by 10.
constexpr int kFeatureWidth = 37;
constexpr int kTypeOffset = 0;
constexpr int kFrameOffset = 5;
constexpr int kRoomOffset = 8;
constexpr int kHumanOffset = 11;
constexpr int kObjectOffset = 19;
constexpr int kWallOffset = 29;
constexpr int kGoalOffset = 34;

// Edge feature layout for blocks that consume edge features: relation
// one-hot plus the distance between the linked entities (decametres; zero
// for self and temporal edges).
constexpr int kEdgeFeatureWidth = kNumRelations + 1;

struct Edge {
  int src = 0;
  int dst = 0;
  RelationType rel = RelationType::Self;
};

// The merged three-frame graph of one sample.
struct SocialGraph {
  std::string scenario_id;
  int num_nodes = 0;
  std::vector<NodeType> node_types;
  std::vector<int> frame_index;        // 0, 1 or 2 per node
  std::vector<int> entity_ids;         // entity id; room -1, goal -2, wall k -(3+k)
  std::vector<Edge> edges;
  ad::Tensor node_features;            // num_nodes x 37
  ad::Tensor edge_features;            // num_edges x 14
  double label_q1 = 0.0;               // scaled to [0, 1]
  double label_q2 = 0.0;
  std::array<int, 3> room_node_index_per_frame = {0, 0, 0};

  int num_edges() const { return static_cast<int>(edges.size()); }
};

// Disjoint union of member graphs with index offsets; the readout row of
// each member is its frame-2 room node.
struct BatchedGraph {
  int num_nodes = 0;
  std::vector<Edge> edges;
  std::vector<int> edge_src;             // flat copies for kernel calls
  std::vector<int> edge_dst;
  std::vector<int> relation_ids;
  ad::Tensor node_features;              // num_nodes x 37
  ad::Tensor edge_features;              // num_edges x 14
  ad::Tensor labels;                     // B x 2
  std::vector<int> readout_indices;      // B entries
  kernels::SegmentCsr in_csr;            // in-edges per node, ascending edge id

  int size() const { return static_cast<int>(readout_indices.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
};

}  // namespace socnav::graph
