#pragma once

#include <string>

#include "socnav/graph/social_graph.hpp"

namespace socnav::graph {

// Line-based text dump, one node/edge per line, stable across runs; used by
// golden-file tests and the `transform` subcommand.
std::string dump_graph(const SocialGraph& g);

}  // namespace socnav::graph
