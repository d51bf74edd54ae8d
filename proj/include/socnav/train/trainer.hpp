#pragma once

#include <functional>
#include <limits>
#include <optional>

#include "socnav/train/checkpoint.hpp"
#include "socnav/train/dataset.hpp"

namespace socnav::train {

// Tracks the best dev loss; fires after `patience` consecutive
// non-improving epochs (strict improvement, no tolerance).
class EarlyStopper {
 public:
  explicit EarlyStopper(int patience) : patience_(patience) {}

  // Returns true when training should stop after this epoch.
  bool update(double dev_loss) {
    if (dev_loss < best_) {
      best_ = dev_loss;
      bad_epochs_ = 0;
    } else {
      ++bad_epochs_;
    }
    return bad_epochs_ >= patience_;
  }

  bool improved_last() const { return bad_epochs_ == 0; }
  double best() const { return best_; }

 private:
  int patience_;
  int bad_epochs_ = 0;
  double best_ = std::numeric_limits<double>::infinity();
};

// Mean squared error of the model over the given sample indices, both
// outputs pooled. Per-sample errors are accumulated in sample order, so the
// result does not depend on the evaluation batch size.
double evaluate(gnn::GnnStack& model, const std::vector<Sample>& samples,
                const std::vector<int>& indices, int batch_size = 64);

// Per-sample absolute errors for one question (0 = Q1, 1 = Q2).
std::vector<double> absolute_errors(gnn::GnnStack& model,
                                    const std::vector<Sample>& samples,
                                    const std::vector<int>& indices, int question,
                                    int batch_size = 64);

// MSE of the constant predictor that outputs the train-split label mean.
double constant_mean_baseline(const std::vector<Sample>& samples,
                              const std::vector<int>& train_indices,
                              const std::vector<int>& eval_indices);

struct TrainOptions {
  // Called after each epoch (epoch, train_mse, dev_mse, seconds).
  std::function<void(int, double, double, double)> on_epoch;
};

// Full training loop: epoch shuffling with the config seed, Adam updates,
// per-epoch dev evaluation, early stopping with the config patience, best
// dev epoch restored into the returned checkpoint. Identical inputs produce
// bitwise identical histories and parameters. Throws Error(NonFinite) when
// a loss or gradient goes non-finite.
Checkpoint train(const HyperParams& config, const DatasetSplits& splits,
                 const std::vector<Sample>& dataset, const TrainOptions& options = {});

}  // namespace socnav::train
