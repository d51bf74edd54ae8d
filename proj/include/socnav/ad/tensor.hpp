#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <vector>

#include "socnav/common/error.hpp"

namespace socnav::ad {

// Dense row-major matrix of 64-bit floats. Copies share the underlying
// buffer; the tape relies on this to keep operation inputs alive cheaply.
// `node` is the id of the tape record that produced the tensor (-1 when the
// tensor is a constant from the tape's point of view).
class Tensor {
 public:
  Tensor() = default;
  Tensor(int rows, int cols)
      : rows_(rows), cols_(cols),
        buf_(std::make_shared<std::vector<double>>(
            static_cast<size_t>(rows) * static_cast<size_t>(cols), 0.0)) {}

  static Tensor zeros(int rows, int cols) { return Tensor(rows, cols); }

  static Tensor full(int rows, int cols, double v) {
    Tensor t(rows, cols);
    for (auto& x : *t.buf_) x = v;
    return t;
  }

  static Tensor scalar(double v) { return full(1, 1, v); }

  static Tensor from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
    Tensor t(r, c);
    int i = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != c)
        throw Error(ErrorCode::ShapeMismatch, "ragged initializer");
      int j = 0;
      for (double v : row) t.at(i, j++) = v;
      ++i;
    }
    return t;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int64_t size() const { return static_cast<int64_t>(rows_) * cols_; }
  bool defined() const { return buf_ != nullptr; }
  bool is_scalar() const { return rows_ == 1 && cols_ == 1; }

  double* data() { return buf_->data(); }
  const double* data() const { return buf_->data(); }

  double& at(int r, int c) { return (*buf_)[static_cast<size_t>(r) * cols_ + c]; }
  double at(int r, int c) const { return (*buf_)[static_cast<size_t>(r) * cols_ + c]; }

  double item() const {
    if (!is_scalar()) throw Error(ErrorCode::NotScalar, "item() on non-scalar tensor");
    return (*buf_)[0];
  }

  // Deep copy with its own buffer.
  Tensor clone() const {
    Tensor t(rows_, cols_);
    *t.buf_ = *buf_;
    return t;
  }

  bool same_shape(const Tensor& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  // Tape record id; -1 for constants.
  int node = -1;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::shared_ptr<std::vector<double>> buf_;
};

// A named learnable tensor. `grad` is overwritten by each backward pass.
struct Parameter {
  std::string name;
  Tensor value;
  Tensor grad;
  bool requires_grad = true;

  Parameter() = default;
  Parameter(std::string n, Tensor v)
      : name(std::move(n)), value(std::move(v)),
        grad(Tensor::zeros(value.rows(), value.cols())) {}
};

}  // namespace socnav::ad
