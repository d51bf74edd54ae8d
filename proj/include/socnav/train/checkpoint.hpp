#pragma once

#include <map>
#include <memory>
#include <string>

#include "socnav/gnn/stack.hpp"
#include "socnav/train/hyperparams.hpp"

namespace socnav::train {

struct TrainHistory {
  std::vector<double> train_mse;
  std::vector<double> dev_mse;
  int best_epoch = -1;  // 0-based
  double best_dev_mse = 0.0;
  std::string stop_reason;

  nlohmann::json to_json() const;
  static TrainHistory from_json(const nlohmann::json& j);
};

// Serialized model: parameters plus the hyperparameters needed to rebuild
// the stack, the training history and the split-manifest hash.
struct Checkpoint {
  HyperParams hyperparams;
  TrainHistory history;
  std::string manifest_hash;
  std::map<std::string, ad::Tensor> parameters;

  void save(const std::string& path) const;
  static Checkpoint load(const std::string& path);

  // Rebuilds the stack and loads the stored parameters into it.
  std::unique_ptr<gnn::GnnStack> build_model() const;

  static Checkpoint of_model(gnn::GnnStack& model, const HyperParams& hp,
                             TrainHistory history, std::string manifest_hash);
};

}  // namespace socnav::train
