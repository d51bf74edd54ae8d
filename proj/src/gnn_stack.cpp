#include "socnav/gnn/stack.hpp"

#include "socnav/common/error.hpp"

namespace socnav::gnn {

using ad::Tensor;

GnnStack::GnnStack(const StackConfig& config) : config_(config) {
  if (config_.widths.empty())
    throw Error(ErrorCode::ShapeMismatch, "GnnStack: empty width list");
  Rng rng(config_.init_seed);
  int d_in = config_.input_width;
  for (size_t i = 0; i < config_.widths.size(); ++i) {
    const std::string name = "layer" + std::to_string(i);
    const int d_out = config_.widths[i];
    const bool last = i + 1 == config_.widths.size();
    Rng layer_rng = rng.fork();
    switch (config_.kind) {
      case BlockKind::Gcn:
        layers_.push_back(std::make_unique<GcnLayer>(name, d_in, d_out, layer_rng));
        break;
      case BlockKind::Rgcn:
        layers_.push_back(std::make_unique<RgcnLayer>(name, d_in, d_out,
                                                      config_.num_bases, layer_rng));
        break;
      case BlockKind::Gat:
        layers_.push_back(std::make_unique<GatLayer>(
            name, d_in, d_out, config_.heads, config_.alpha, last, layer_rng));
        break;
      case BlockKind::Mpnn:
        layers_.push_back(
            std::make_unique<MpnnLayer>(name, d_in, d_out, config_.alpha, layer_rng));
        break;
    }
    d_in = layers_.back()->out_width();
  }
  Rng head_rng = rng.fork();
  head_w_ = ad::Parameter("head/w", ad::glorot_uniform(d_in, 2, head_rng));
  head_b_ = ad::Parameter("head/b", Tensor::zeros(1, 2));
}

Tensor GnnStack::forward(ad::Tape& tape, const graph::BatchedGraph& batch,
                         bool training, Rng* dropout_rng) {
  if (batch.node_features.cols() != config_.input_width)
    throw Error(ErrorCode::ShapeMismatch, "GnnStack: node feature width mismatch");
  Tensor h = batch.node_features;
  for (size_t i = 0; i < layers_.size(); ++i) {
    h = layers_[i]->forward(tape, batch, h);
    h = tape.leaky_relu(h, config_.alpha);
    if (training && config_.dropout > 0.0 && i + 1 < layers_.size()) {
      if (dropout_rng == nullptr)
        throw Error(ErrorCode::ShapeMismatch, "GnnStack: dropout needs an rng");
      h = tape.dropout(h, config_.dropout, *dropout_rng, training);
    }
  }
  Tensor readout = tape.gather_rows(h, batch.readout_indices);
  Tensor logits =
      tape.add_row_bias(tape.matmul(readout, tape.watch(head_w_)), tape.watch(head_b_));
  return tape.sigmoid(logits);
}

std::vector<ad::Parameter*> GnnStack::parameters() {
  std::vector<ad::Parameter*> out;
  for (auto& layer : layers_)
    for (auto* p : layer->parameters()) out.push_back(p);
  out.push_back(&head_w_);
  out.push_back(&head_b_);
  return out;
}

std::map<std::string, Tensor> GnnStack::named_parameters() {
  std::map<std::string, Tensor> out;
  for (auto* p : parameters()) out.emplace(p->name, p->value);
  return out;
}

void GnnStack::load_parameters(const std::map<std::string, Tensor>& values) {
  for (auto* p : parameters()) {
    const auto it = values.find(p->name);
    if (it == values.end())
      throw Error(ErrorCode::Schema, "missing parameter: " + p->name);
    if (!it->second.same_shape(p->value))
      throw Error(ErrorCode::ShapeMismatch, "parameter shape mismatch: " + p->name);
    p->value = it->second.clone();
    p->grad = Tensor::zeros(p->value.rows(), p->value.cols());
  }
}

}  // namespace socnav::gnn
