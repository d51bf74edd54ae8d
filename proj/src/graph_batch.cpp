#include "socnav/graph/batch.hpp"

#include <cstring>

#include "socnav/common/error.hpp"

namespace socnav::graph {

BatchedGraph batch_graphs(std::span<const SocialGraph* const> graphs) {
  if (graphs.empty())
    throw Error(ErrorCode::ShapeMismatch, "batch_graphs: empty batch");

  BatchedGraph b;
  const int node_width = graphs.front()->node_features.cols();
  const int edge_width = graphs.front()->edge_features.cols();
  int total_nodes = 0;
  int total_edges = 0;
  for (const SocialGraph* g : graphs) {
    if (g->node_features.cols() != node_width ||
        g->edge_features.cols() != edge_width)
      throw Error(ErrorCode::ShapeMismatch, "batch_graphs: feature width mismatch");
    total_nodes += g->num_nodes;
    total_edges += g->num_edges();
  }

  b.num_nodes = total_nodes;
  b.node_features = ad::Tensor(total_nodes, node_width);
  b.edge_features = ad::Tensor(total_edges, edge_width);
  b.labels = ad::Tensor(static_cast<int>(graphs.size()), 2);
  b.edges.reserve(static_cast<size_t>(total_edges));
  b.edge_src.reserve(static_cast<size_t>(total_edges));
  b.edge_dst.reserve(static_cast<size_t>(total_edges));
  b.relation_ids.reserve(static_cast<size_t>(total_edges));

  int node_offset = 0;
  int edge_offset = 0;
  int member = 0;
  for (const SocialGraph* g : graphs) {
    std::memcpy(b.node_features.data() + static_cast<int64_t>(node_offset) * node_width,
                g->node_features.data(),
                sizeof(double) * static_cast<size_t>(g->num_nodes) * node_width);
    std::memcpy(b.edge_features.data() + static_cast<int64_t>(edge_offset) * edge_width,
                g->edge_features.data(),
                sizeof(double) * static_cast<size_t>(g->num_edges()) * edge_width);
    for (const Edge& e : g->edges) {
      b.edges.push_back({e.src + node_offset, e.dst + node_offset, e.rel});
      b.edge_src.push_back(e.src + node_offset);
      b.edge_dst.push_back(e.dst + node_offset);
      b.relation_ids.push_back(static_cast<int>(e.rel));
    }
    b.readout_indices.push_back(g->room_node_index_per_frame[2] + node_offset);
    b.labels.at(member, 0) = g->label_q1;
    b.labels.at(member, 1) = g->label_q2;
    node_offset += g->num_nodes;
    edge_offset += g->num_edges();
    ++member;
  }

  b.in_csr = kernels::SegmentCsr::build(b.edge_dst, b.num_nodes);
  return b;
}

BatchedGraph batch_graphs(const std::vector<SocialGraph>& graphs) {
  std::vector<const SocialGraph*> ptrs;
  ptrs.reserve(graphs.size());
  for (const SocialGraph& g : graphs) ptrs.push_back(&g);
  return batch_graphs(std::span<const SocialGraph* const>(ptrs));
}

}  // namespace socnav::graph
