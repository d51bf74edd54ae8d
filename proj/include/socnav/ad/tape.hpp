#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "socnav/ad/tensor.hpp"
#include "socnav/common/rng.hpp"
#include "socnav/kernels/kernels.hpp"

namespace socnav::ad {

using GradMap = std::map<std::string, Tensor>;

// Reverse-mode differentiation tape. Operations compute eagerly through the
// shared kernels and, while recording, append a backward closure per result.
// A tape is single-threaded; independent tapes may live on separate threads.
//
// Typical round trip:
//   Tape tape;
//   Tensor w = tape.watch(param);
//   Tensor loss = tape.mse(tape.matmul(x, w), y);
//   tape.backward(loss);   // fills param.grad, clears the tape
//
// With recording disabled the same calls run as plain arithmetic (used for
// evaluation and sweeps).
class Tape {
 public:
  explicit Tape(bool recording = true) : recording_(recording) {}

  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  bool recording() const { return recording_; }

  // Registers a parameter as a differentiable leaf. Safe to call several
  // times per tape; the same leaf node is reused.
  Tensor watch(Parameter& p);

  // --- operations -----------------------------------------------------
  Tensor matmul(const Tensor& a, const Tensor& b);
  Tensor add(const Tensor& a, const Tensor& b);
  Tensor sub(const Tensor& a, const Tensor& b);
  Tensor mul(const Tensor& a, const Tensor& b);  // elementwise
  Tensor mul_rows(const Tensor& a, const Tensor& col);  // scales row i by col[i]
  Tensor scale(const Tensor& a, double c);
  Tensor add_row_bias(const Tensor& m, const Tensor& bias);  // bias is 1 x n
  Tensor concat_cols(const Tensor& a, const Tensor& b);
  Tensor slice_cols(const Tensor& a, int col0, int col1);  // [col0, col1)
  Tensor gather_rows(const Tensor& a, std::vector<int> idx);
  Tensor segment_sum(const Tensor& values, const std::vector<int>& destination,
                     int num_segments, const kernels::SegmentCsr* csr = nullptr);
  Tensor segment_softmax(const Tensor& scores, const std::vector<int>& destination,
                         int num_segments, const kernels::SegmentCsr* csr = nullptr);
  Tensor relu(const Tensor& a);
  Tensor leaky_relu(const Tensor& a, double slope);
  Tensor tanh(const Tensor& a);
  Tensor sigmoid(const Tensor& a);
  // Inverted dropout; identity when !training or rate == 0.
  Tensor dropout(const Tensor& a, double rate, Rng& rng, bool training);
  Tensor mse(const Tensor& pred, const Tensor& target);
  Tensor sum_all(const Tensor& a);

  // Reverse-topological gradient accumulation from a scalar loss. Fills
  // `grad` on every watched parameter (zeros when disconnected), returns the
  // same gradients keyed by parameter name, and clears the tape.
  GradMap backward(const Tensor& loss);

  // Abort the recording without differentiating (e.g. after an exception).
  void reset();

  // Throwing on NaN/Inf after each op is on by default.
  void set_check_finite(bool v) { check_finite_ = v; }

 private:
  struct Record {
    // Accumulates input gradients given the output gradient.
    std::function<void(Tape&, const Tensor&)> backward;
  };

  int push(std::function<void(Tape&, const Tensor&)> fn);
  void accumulate(int node, const Tensor& g);
  void check(const Tensor& t, const char* op) const;
  // Records `out` if any input is on the tape.
  void record(Tensor& out, std::initializer_list<const Tensor*> inputs,
              std::function<void(Tape&, const Tensor&)> fn);

  bool recording_;
  bool check_finite_ = true;
  std::vector<Record> records_;
  std::vector<Tensor> grads_;                  // parallel to records_
  std::vector<std::pair<Parameter*, int>> watched_;
};

}  // namespace socnav::ad
