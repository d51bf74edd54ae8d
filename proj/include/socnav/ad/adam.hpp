#pragma once

#include <vector>

#include "socnav/ad/tensor.hpp"

namespace socnav::ad {

// Adam with decoupled weight decay. The decay term is applied directly to
// the parameter before the moment update, so it does not enter the moment
// estimates.
class Adam {
 public:
  Adam(double lr, double weight_decay = 0.0, double beta1 = 0.9,
       double beta2 = 0.999, double eps = 1e-8)
      : lr_(lr), weight_decay_(weight_decay), beta1_(beta1), beta2_(beta2), eps_(eps) {}

  // Consumes p->grad for every parameter. Lazily allocates moment state on
  // first use; parameter order must stay stable across steps.
  void step(const std::vector<Parameter*>& params);

  int64_t step_count() const { return step_; }

 private:
  struct Moments {
    Tensor m;
    Tensor v;
  };

  double lr_;
  double weight_decay_;
  double beta1_;
  double beta2_;
  double eps_;
  int64_t step_ = 0;
  std::vector<Moments> state_;
};

}  // namespace socnav::ad
