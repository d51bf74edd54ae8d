#include "socnav/ad/adam.hpp"

#include <cmath>

namespace socnav::ad {

void Adam::step(const std::vector<Parameter*>& params) {
  if (state_.empty()) {
    state_.resize(params.size());
    for (size_t i = 0; i < params.size(); ++i) {
      state_[i].m = Tensor::zeros(params[i]->value.rows(), params[i]->value.cols());
      state_[i].v = Tensor::zeros(params[i]->value.rows(), params[i]->value.cols());
    }
  }
  if (state_.size() != params.size())
    throw Error(ErrorCode::ShapeMismatch, "Adam: parameter list changed size");

  ++step_;
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(step_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(step_));

  for (size_t i = 0; i < params.size(); ++i) {
    Parameter& p = *params[i];
    if (!p.grad.same_shape(p.value))
      throw Error(ErrorCode::ShapeMismatch, "Adam: grad/value shape mismatch for " + p.name);
    double* w = p.value.data();
    const double* g = p.grad.data();
    double* m = state_[i].m.data();
    double* v = state_[i].v.data();
    const int64_t n = p.value.size();
    for (int64_t j = 0; j < n; ++j) {
      w[j] -= lr_ * weight_decay_ * w[j];  // decoupled decay first
      m[j] = beta1_ * m[j] + (1.0 - beta1_) * g[j];
      v[j] = beta2_ * v[j] + (1.0 - beta2_) * g[j] * g[j];
      const double mhat = m[j] / bc1;
      const double vhat = v[j] / bc2;
      w[j] -= lr_ * mhat / (std::sqrt(vhat) + eps_);
    }
  }
}

}  // namespace socnav::ad
