#pragma once

#include <memory>
#include <string>
#include <vector>

#include "socnav/ad/mlp.hpp"
#include "socnav/ad/tape.hpp"
#include "socnav/graph/social_graph.hpp"

namespace socnav::gnn {

enum class BlockKind { Gcn, Rgcn, Gat, Mpnn };

const char* block_kind_name(BlockKind k);
BlockKind block_kind_from_name(const std::string& name);

// One message-passing layer. Forward maps the node feature matrix H
// (num_nodes x in_width) to num_nodes x out_width over a fixed graph.
class Layer {
 public:
  virtual ~Layer() = default;
  virtual ad::Tensor forward(ad::Tape& tape, const graph::BatchedGraph& g,
                             const ad::Tensor& h) = 0;
  virtual std::vector<ad::Parameter*> parameters() = 0;
  virtual int out_width() const = 0;
};

// Plain graph convolution: e_bar_i = sum of in-neighbour features (plain
// sum, no degree normalisation), v_i' = phi([e_bar_i, v_i]) with phi a
// single affine map.
class GcnLayer : public Layer {
 public:
  GcnLayer(const std::string& name, int d_in, int d_out, Rng& rng);
  ad::Tensor forward(ad::Tape& tape, const graph::BatchedGraph& g,
                     const ad::Tensor& h) override;
  std::vector<ad::Parameter*> parameters() override { return phi_.parameters(); }
  int out_width() const override { return phi_.out_width(); }

 private:
  ad::Mlp phi_;
};

// Relational graph convolution with basis decomposition:
// W_r = sum_b coeff[r][b] * basis_b, plus a self-loop weight and bias.
class RgcnLayer : public Layer {
 public:
  RgcnLayer(const std::string& name, int d_in, int d_out, int num_bases, Rng& rng);
  ad::Tensor forward(ad::Tape& tape, const graph::BatchedGraph& g,
                     const ad::Tensor& h) override;
  std::vector<ad::Parameter*> parameters() override;
  int out_width() const override { return d_out_; }

 private:
  int d_out_;
  int num_bases_;
  ad::Parameter w_self_;
  ad::Parameter bias_;
  ad::Parameter coeffs_;  // num_relations x num_bases
  std::vector<ad::Parameter> bases_;
};

// Multi-head attention over in-edges. Hidden layers concatenate heads
// (per-head width ceil(d_out / heads)); the final layer averages them.
class GatLayer : public Layer {
 public:
  GatLayer(const std::string& name, int d_in, int d_out, int heads, double alpha,
           bool mean_merge, Rng& rng);
  ad::Tensor forward(ad::Tape& tape, const graph::BatchedGraph& g,
                     const ad::Tensor& h) override;
  std::vector<ad::Parameter*> parameters() override;
  int out_width() const override;

 private:
  int head_width_;
  int heads_;
  double alpha_;
  bool mean_merge_;
  std::vector<ad::Parameter> w_;       // per head: d_in x head_width
  std::vector<ad::Parameter> a_src_;   // per head: head_width x 1
  std::vector<ad::Parameter> a_dst_;   // per head: head_width x 1
};

// Message passing with edge features: m_k = MLP_msg([v_src ++ e_k]),
// aggregated by sum, v_i' = MLP_upd([e_bar_i ++ v_i]).
class MpnnLayer : public Layer {
 public:
  MpnnLayer(const std::string& name, int d_in, int d_out, double alpha, Rng& rng);
  ad::Tensor forward(ad::Tape& tape, const graph::BatchedGraph& g,
                     const ad::Tensor& h) override;
  std::vector<ad::Parameter*> parameters() override;
  int out_width() const override { return update_.out_width(); }

 private:
  ad::Mlp message_;
  ad::Mlp update_;
};

}  // namespace socnav::gnn
