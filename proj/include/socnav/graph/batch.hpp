#pragma once

#include <span>
#include <vector>

#include "socnav/graph/social_graph.hpp"

namespace socnav::graph {

// Disjoint union of the given graphs in input order. Node and edge indices
// are offset by the cumulative node counts; readout indices point at each
// member's frame-2 room node. Throws Error(ShapeMismatch) on an empty list
// or heterogeneous feature widths.
BatchedGraph batch_graphs(std::span<const SocialGraph* const> graphs);

BatchedGraph batch_graphs(const std::vector<SocialGraph>& graphs);

}  // namespace socnav::graph
