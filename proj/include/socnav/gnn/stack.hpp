#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "socnav/gnn/layers.hpp"

namespace socnav::gnn {

struct StackConfig {
  BlockKind kind = BlockKind::Mpnn;
  int input_width = graph::kFeatureWidth;
  std::vector<int> widths;  // output width per layer, e.g. {40, 30, 21, 12, 3, 3}
  int heads = 4;            // gat only
  int num_bases = 8;        // rgcn only
  double alpha = 0.2;       // leaky-relu slope between layers
  double dropout = 0.0;
  uint64_t init_seed = 1;
};

// Homogeneous stack of message-passing blocks with a room-node readout:
// after the last block, the frame-2 room-node rows of each member graph go
// through a linear head and a logistic squashing into (Q1, Q2) in (0, 1).
class GnnStack {
 public:
  explicit GnnStack(const StackConfig& config);

  // Predictions, one (q1, q2) row per member graph. `dropout_rng` is only
  // consulted while training with a non-zero dropout rate.
  ad::Tensor forward(ad::Tape& tape, const graph::BatchedGraph& batch,
                     bool training = false, Rng* dropout_rng = nullptr);

  std::vector<ad::Parameter*> parameters();
  std::map<std::string, ad::Tensor> named_parameters();
  // Loads values by name; throws on missing names or shape mismatches.
  void load_parameters(const std::map<std::string, ad::Tensor>& values);

  const StackConfig& config() const { return config_; }

 private:
  StackConfig config_;
  std::vector<std::unique_ptr<Layer>> layers_;
  ad::Parameter head_w_;
  ad::Parameter head_b_;
};

}  // namespace socnav::gnn
