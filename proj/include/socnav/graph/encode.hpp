#pragma once

#include <array>

#include "socnav/graph/social_graph.hpp"
#include "socnav/scene/types.hpp"

namespace socnav::graph {

// Which entity of a snapshot a node stands for. `index` indexes the
// snapshot's humans/objects/walls list; it is ignored for Room and Goal.
struct EntityRef {
  NodeType type = NodeType::Room;
  int index = 0;
};

// The 37-column feature row of one node: type/frame one-hots plus the
// type-specific section, everything metric expressed in the robot frame and
// divided by 10. Sections of other types stay zero.
std::array<double, kFeatureWidth> encode_node_features(const scene::Snapshot& snap,
                                                       EntityRef entity,
                                                       const scene::RobotState& robot,
                                                       int frame_index);

enum class EdgeFeatureVariant { LabelOnly, LabelPlusDistance };

// Relation one-hot plus the distance between the linked entities in
// decametres (zero for self and temporal edges). Blocks that only consume
// labels use Edge::rel directly (the LabelOnly variant).
std::array<double, kEdgeFeatureWidth> encode_edge_feature_row(RelationType rel,
                                                              double distance_m);

// World-frame reference point used for edge distances (room: mean of wall
// polygon vertices; wall: segment centre; otherwise the entity position).
scene::Vec2 entity_reference(const scene::Snapshot& snap, EntityRef entity);

}  // namespace socnav::graph
