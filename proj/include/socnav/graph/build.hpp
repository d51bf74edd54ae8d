#pragma once

#include <array>

#include "socnav/graph/encode.hpp"
#include "socnav/graph/social_graph.hpp"
#include "socnav/scene/types.hpp"

namespace socnav::graph {

// One snapshot turned into a frame graph: a room node, one node per wall
// segment, a goal node, one per object and one per human (no robot node),
// with self-edges, room links in both directions and an edge pair per
// interaction. Node order: room, walls, goal, objects, humans.
struct FrameFragment {
  std::vector<NodeType> node_types;
  std::vector<int> entity_keys;       // temporal matching key
  std::vector<scene::Vec2> ref_points;  // world frame, for edge distances
  std::vector<Edge> edges;              // frame-local indices
  ad::Tensor features;                  // n x 37
  int frame_index = 0;
};

FrameFragment build_frame_graph(const scene::Snapshot& snap, int frame_index);

// Merges three frame fragments into the sample graph, adding one directed
// temporal edge (earlier -> later) per persistent entity per consecutive
// frame pair; room, goal and walls persist by construction. Throws
// Error(EntityMismatch) when an entity id switches type between frames.
SocialGraph merge_temporal(const std::array<FrameFragment, 3>& frames);

// Full pipeline: frame selection, per-frame construction, temporal merge,
// label scaling to [0, 1].
SocialGraph scenario_to_graph(const scene::Scenario& s, double spacing_s = 1.0);

// Graph for an already chosen frame triple (used by heatmap sweeps, which
// re-pose the robot without re-selecting frames).
SocialGraph triple_to_graph(const scene::FrameTriple& triple, const std::string& id,
                            double label_q1_raw, double label_q2_raw);

}  // namespace socnav::graph
