#include "socnav/train/trainer.hpp"

#include <chrono>
#include <cmath>

#include "socnav/ad/adam.hpp"
#include "socnav/graph/batch.hpp"

namespace socnav::train {

namespace {

graph::BatchedGraph make_batch(const std::vector<Sample>& samples,
                               const std::vector<int>& indices, size_t lo, size_t hi) {
  std::vector<const graph::SocialGraph*> ptrs;
  ptrs.reserve(hi - lo);
  for (size_t i = lo; i < hi; ++i)
    ptrs.push_back(&samples[static_cast<size_t>(indices[i])].graph);
  return graph::batch_graphs(std::span<const graph::SocialGraph* const>(ptrs));
}

// Squared errors summed per sample (both outputs), accumulated in index
// order regardless of batch boundaries.
double pooled_mse(gnn::GnnStack& model, const std::vector<Sample>& samples,
                  const std::vector<int>& indices, int batch_size) {
  double acc = 0.0;
  for (size_t lo = 0; lo < indices.size(); lo += static_cast<size_t>(batch_size)) {
    const size_t hi = std::min(indices.size(), lo + static_cast<size_t>(batch_size));
    const graph::BatchedGraph batch = make_batch(samples, indices, lo, hi);
    ad::Tape tape(/*recording=*/false);
    ad::Tensor preds = model.forward(tape, batch);
    for (int r = 0; r < preds.rows(); ++r)
      for (int c = 0; c < 2; ++c) {
        const double d = preds.at(r, c) - batch.labels.at(r, c);
        acc += d * d;
      }
  }
  return acc / (2.0 * static_cast<double>(indices.size()));
}

}  // namespace

double evaluate(gnn::GnnStack& model, const std::vector<Sample>& samples,
                const std::vector<int>& indices, int batch_size) {
  if (indices.empty())
    throw Error(ErrorCode::ShapeMismatch, "evaluate: empty split");
  return pooled_mse(model, samples, indices, batch_size);
}

std::vector<double> absolute_errors(gnn::GnnStack& model,
                                    const std::vector<Sample>& samples,
                                    const std::vector<int>& indices, int question,
                                    int batch_size) {
  std::vector<double> out;
  out.reserve(indices.size());
  for (size_t lo = 0; lo < indices.size(); lo += static_cast<size_t>(batch_size)) {
    const size_t hi = std::min(indices.size(), lo + static_cast<size_t>(batch_size));
    const graph::BatchedGraph batch = make_batch(samples, indices, lo, hi);
    ad::Tape tape(/*recording=*/false);
    ad::Tensor preds = model.forward(tape, batch);
    for (int r = 0; r < preds.rows(); ++r)
      out.push_back(std::abs(preds.at(r, question) - batch.labels.at(r, question)));
  }
  return out;
}

double constant_mean_baseline(const std::vector<Sample>& samples,
                              const std::vector<int>& train_indices,
                              const std::vector<int>& eval_indices) {
  double mean_q1 = 0.0, mean_q2 = 0.0;
  for (int i : train_indices) {
    mean_q1 += samples[static_cast<size_t>(i)].graph.label_q1;
    mean_q2 += samples[static_cast<size_t>(i)].graph.label_q2;
  }
  mean_q1 /= static_cast<double>(train_indices.size());
  mean_q2 /= static_cast<double>(train_indices.size());
  double acc = 0.0;
  for (int i : eval_indices) {
    const double d1 = samples[static_cast<size_t>(i)].graph.label_q1 - mean_q1;
    const double d2 = samples[static_cast<size_t>(i)].graph.label_q2 - mean_q2;
    acc += d1 * d1 + d2 * d2;
  }
  return acc / (2.0 * static_cast<double>(eval_indices.size()));
}

Checkpoint train(const HyperParams& config, const DatasetSplits& splits,
                 const std::vector<Sample>& dataset, const TrainOptions& options) {
  const std::vector<int> train_idx = split_indices(dataset, splits.train);
  const std::vector<int> dev_idx = split_indices(dataset, splits.dev);
  if (train_idx.empty() || dev_idx.empty())
    throw Error(ErrorCode::ShapeMismatch, "train: empty train or dev split");

  gnn::GnnStack model(config.stack_config());
  const std::vector<ad::Parameter*> params = model.parameters();
  ad::Adam optimizer(config.learning_rate, config.weight_decay);
  Rng shuffle_rng(config.rng_seed ^ 0x8e1fa0700d6c2d4bULL);
  Rng dropout_rng(config.rng_seed ^ 0x243f6a8885a308d3ULL);

  EarlyStopper stopper(config.patience);
  TrainHistory history;
  std::map<std::string, ad::Tensor> best_params;
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<int> order = train_idx;
  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    double train_acc = 0.0;
    int64_t train_count = 0;
    for (size_t lo = 0; lo < order.size(); lo += static_cast<size_t>(config.batch_size)) {
      const size_t hi = std::min(order.size(), lo + static_cast<size_t>(config.batch_size));
      const graph::BatchedGraph batch = make_batch(dataset, order, lo, hi);
      ad::Tape tape;
      try {
        ad::Tensor preds = model.forward(tape, batch, /*training=*/true, &dropout_rng);
        ad::Tensor loss = tape.mse(preds, batch.labels);
        train_acc += loss.item() * static_cast<double>(2 * (hi - lo));
        train_count += static_cast<int64_t>(2 * (hi - lo));
        tape.backward(loss);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::NonFinite)
          throw Error(ErrorCode::NonFinite,
                      "NONFINITE_LOSS at epoch " + std::to_string(epoch) + ": " + e.what());
        throw;
      }
      optimizer.step(params);
    }
    const double train_mse = train_acc / static_cast<double>(train_count);
    const double dev_mse = pooled_mse(model, dataset, dev_idx, config.batch_size);
    if (!std::isfinite(train_mse) || !std::isfinite(dev_mse))
      throw Error(ErrorCode::NonFinite,
                  "NONFINITE_LOSS at epoch " + std::to_string(epoch));
    history.train_mse.push_back(train_mse);
    history.dev_mse.push_back(dev_mse);

    const bool stop = stopper.update(dev_mse);
    if (stopper.improved_last()) {
      history.best_epoch = epoch;
      history.best_dev_mse = dev_mse;
      best_params.clear();
      for (auto& [name, value] : model.named_parameters())
        best_params.emplace(name, value.clone());
    }
    if (options.on_epoch) {
      const double secs = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - t0).count();
      options.on_epoch(epoch, train_mse, dev_mse, secs);
    }
    if (stop) {
      history.stop_reason = "early_stopping";
      break;
    }
  }
  if (history.stop_reason.empty()) history.stop_reason = "max_epochs";

  model.load_parameters(best_params);
  Checkpoint ckpt = Checkpoint::of_model(model, config, std::move(history), "");
  return ckpt;
}

}  // namespace socnav::train
