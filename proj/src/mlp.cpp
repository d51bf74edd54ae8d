#include "socnav/ad/mlp.hpp"

#include <cmath>

namespace socnav::ad {

Tensor glorot_uniform(int fan_in, int fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / (fan_in + fan_out));
  Tensor t(fan_in, fan_out);
  double* p = t.data();
  for (int64_t i = 0; i < t.size(); ++i) p[i] = rng.uniform(-limit, limit);
  return t;
}

Mlp::Mlp(const std::string& name, std::vector<int> widths, Activation hidden,
         Activation final, Rng& rng)
    : widths_(std::move(widths)), hidden_(hidden), final_(final) {
  if (widths_.size() < 2)
    throw Error(ErrorCode::ShapeMismatch, "Mlp: need at least in/out widths");
  for (size_t l = 0; l + 1 < widths_.size(); ++l) {
    const std::string suffix = "/l" + std::to_string(l);
    weights_.emplace_back(name + suffix + "/w",
                          glorot_uniform(widths_[l], widths_[l + 1], rng));
    biases_.emplace_back(name + suffix + "/b", Tensor::zeros(1, widths_[l + 1]));
  }
}

Tensor Mlp::forward(Tape& tape, const Tensor& x) {
  Tensor h = x;
  for (size_t l = 0; l < weights_.size(); ++l) {
    h = tape.add_row_bias(tape.matmul(h, tape.watch(weights_[l])),
                          tape.watch(biases_[l]));
    if (l + 1 < weights_.size()) h = hidden_.apply(tape, h);
  }
  return final_.apply(tape, h);
}

std::vector<Parameter*> Mlp::parameters() {
  std::vector<Parameter*> out;
  for (size_t l = 0; l < weights_.size(); ++l) {
    out.push_back(&weights_[l]);
    out.push_back(&biases_[l]);
  }
  return out;
}

}  // namespace socnav::ad
