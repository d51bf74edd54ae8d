#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "socnav/gnn/stack.hpp"

namespace socnav::train {

// Training configuration. Sampled fields follow the published search
// ranges; fixed fields (max_epochs, patience) are constants of the
// protocol. `widths_override`, when non-empty, bypasses the tapered width
// schedule derived from hidden_units.
struct HyperParams {
  int max_epochs = 1000;
  int patience = 4;
  int batch_size = 57;
  int hidden_units = 40;
  int attention_heads = 4;  // gat only
  int num_bases = 8;        // rgcn only
  double learning_rate = 2.5e-4;
  double weight_decay = 1e-6;
  int layers = 6;
  double dropout = 0.0;
  double alpha = 0.2;
  gnn::BlockKind block_kind = gnn::BlockKind::Mpnn;
  uint64_t rng_seed = 1;
  std::vector<int> widths_override;

  // Per-layer output widths: the override when given, otherwise a linear
  // taper from hidden_units down to the fixed final width of 3.
  std::vector<int> widths() const;

  gnn::StackConfig stack_config() const;

  nlohmann::json to_json() const;
  static HyperParams from_json(const nlohmann::json& j);
};

// Uniform draw from the search ranges (integers inclusive), deterministic
// per seed.
HyperParams sample_hyperparams(uint64_t seed);

}  // namespace socnav::train
