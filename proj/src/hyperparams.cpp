#include "socnav/train/hyperparams.hpp"

#include <cmath>

#include "socnav/common/rng.hpp"

namespace socnav::train {

std::vector<int> HyperParams::widths() const {
  if (!widths_override.empty()) return widths_override;
  std::vector<int> out;
  constexpr int kFinalWidth = 3;
  if (layers == 1) return {kFinalWidth};
  for (int i = 0; i < layers; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(layers - 1);
    out.push_back(static_cast<int>(
        std::lround(hidden_units - (hidden_units - kFinalWidth) * t)));
  }
  return out;
}

gnn::StackConfig HyperParams::stack_config() const {
  gnn::StackConfig c;
  c.kind = block_kind;
  c.widths = widths();
  c.heads = attention_heads;
  c.num_bases = num_bases;
  c.alpha = alpha;
  c.dropout = dropout;
  c.init_seed = rng_seed;
  return c;
}

nlohmann::json HyperParams::to_json() const {
  nlohmann::json j;
  j["max_epochs"] = max_epochs;
  j["patience"] = patience;
  j["batch_size"] = batch_size;
  j["hidden_units"] = hidden_units;
  j["attention_heads"] = attention_heads;
  j["num_bases"] = num_bases;
  j["learning_rate"] = learning_rate;
  j["weight_decay"] = weight_decay;
  j["layers"] = layers;
  j["dropout"] = dropout;
  j["alpha"] = alpha;
  j["block_kind"] = gnn::block_kind_name(block_kind);
  j["rng_seed"] = rng_seed;
  if (!widths_override.empty()) j["widths"] = widths_override;
  return j;
}

HyperParams HyperParams::from_json(const nlohmann::json& j) {
  HyperParams hp;
  hp.max_epochs = j.value("max_epochs", hp.max_epochs);
  hp.patience = j.value("patience", hp.patience);
  hp.batch_size = j.value("batch_size", hp.batch_size);
  hp.hidden_units = j.value("hidden_units", hp.hidden_units);
  hp.attention_heads = j.value("attention_heads", hp.attention_heads);
  hp.num_bases = j.value("num_bases", hp.num_bases);
  hp.learning_rate = j.value("learning_rate", hp.learning_rate);
  hp.weight_decay = j.value("weight_decay", hp.weight_decay);
  hp.layers = j.value("layers", hp.layers);
  hp.dropout = j.value("dropout", hp.dropout);
  hp.alpha = j.value("alpha", hp.alpha);
  if (j.contains("block_kind"))
    hp.block_kind = gnn::block_kind_from_name(j["block_kind"].get<std::string>());
  hp.rng_seed = j.value("rng_seed", hp.rng_seed);
  if (j.contains("widths")) hp.widths_override = j["widths"].get<std::vector<int>>();
  return hp;
}

HyperParams sample_hyperparams(uint64_t seed) {
  Rng rng(seed ^ 0xa02bdbf7bb3c0a7ULL);
  HyperParams hp;
  hp.max_epochs = 1000;
  hp.patience = 4;
  hp.batch_size = rng.uniform_int(25, 70);
  hp.hidden_units = rng.uniform_int(20, 90);
  hp.attention_heads = rng.uniform_int(3, 10);
  hp.num_bases = rng.uniform_int(4, 24);
  hp.learning_rate = rng.uniform(1e-4, 5e-4);
  hp.weight_decay = rng.uniform(0.0, 1e-6);
  hp.layers = rng.uniform_int(3, 9);
  hp.dropout = rng.uniform(0.0, 1e-6);
  hp.alpha = rng.uniform(0.1, 0.3);
  constexpr gnn::BlockKind kinds[] = {gnn::BlockKind::Gcn, gnn::BlockKind::Rgcn,
                                      gnn::BlockKind::Gat, gnn::BlockKind::Mpnn};
  hp.block_kind = kinds[rng.bounded(4)];
  hp.rng_seed = seed;
  return hp;
}

}  // namespace socnav::train
