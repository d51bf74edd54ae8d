#pragma once

#include <string>
#include <vector>

#include "socnav/ad/tape.hpp"
#include "socnav/ad/tensor.hpp"
#include "socnav/common/rng.hpp"

namespace socnav::ad {

enum class Act { None, Relu, LeakyRelu, Tanh, Sigmoid };

struct Activation {
  Act kind = Act::None;
  double alpha = 0.2;  // leaky slope

  Tensor apply(Tape& tape, const Tensor& x) const {
    switch (kind) {
      case Act::None: return x;
      case Act::Relu: return tape.relu(x);
      case Act::LeakyRelu: return tape.leaky_relu(x, alpha);
      case Act::Tanh: return tape.tanh(x);
      case Act::Sigmoid: return tape.sigmoid(x);
    }
    return x;
  }
};

// Glorot-uniform weight matrix, seeded.
Tensor glorot_uniform(int fan_in, int fan_out, Rng& rng);

// Plain feed-forward stack of affine layers: widths.front() inputs,
// widths.back() outputs, `hidden` activation between layers and an optional
// `final` activation on the output.
class Mlp {
 public:
  Mlp() = default;
  Mlp(const std::string& name, std::vector<int> widths, Activation hidden,
      Activation final, Rng& rng);

  Tensor forward(Tape& tape, const Tensor& x);

  std::vector<Parameter*> parameters();

  int in_width() const { return widths_.front(); }
  int out_width() const { return widths_.back(); }

 private:
  std::vector<int> widths_;
  Activation hidden_;
  Activation final_;
  std::vector<Parameter> weights_;
  std::vector<Parameter> biases_;
};

}  // namespace socnav::ad
