#include "socnav/graph/dump.hpp"

#include <cstdio>
#include <sstream>

namespace socnav::graph {

std::string dump_graph(const SocialGraph& g) {
  std::ostringstream os;
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::string(buf);
  };

  os << "graph id=" << g.scenario_id << " nodes=" << g.num_nodes
     << " edges=" << g.num_edges() << " q1=" << num(g.label_q1)
     << " q2=" << num(g.label_q2) << "\n";
  for (int i = 0; i < g.num_nodes; ++i) {
    os << "node " << i << " type=" << node_type_name(g.node_types[i])
       << " frame=" << g.frame_index[i] << " feat=";
    for (int j = 0; j < g.node_features.cols(); ++j) {
      if (j) os << ",";
      os << num(g.node_features.at(i, j));
    }
    os << "\n";
  }
  for (int k = 0; k < g.num_edges(); ++k) {
    const Edge& e = g.edges[static_cast<size_t>(k)];
    os << "edge " << k << " src=" << e.src << " dst=" << e.dst
       << " rel=" << relation_name(e.rel)
       << " dist=" << num(g.edge_features.at(k, kNumRelations)) << "\n";
  }
  return os.str();
}

}  // namespace socnav::graph
