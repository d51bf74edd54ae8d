#include "socnav/gnn/layers.hpp"

#include "socnav/common/error.hpp"

namespace socnav::gnn {

using ad::Activation;
using ad::Act;
using ad::Tensor;

const char* block_kind_name(BlockKind k) {
  switch (k) {
    case BlockKind::Gcn: return "gcn";
    case BlockKind::Rgcn: return "rgcn";
    case BlockKind::Gat: return "gat";
    case BlockKind::Mpnn: return "mpnn";
  }
  return "?";
}

BlockKind block_kind_from_name(const std::string& name) {
  if (name == "gcn") return BlockKind::Gcn;
  if (name == "rgcn") return BlockKind::Rgcn;
  if (name == "gat") return BlockKind::Gat;
  if (name == "mpnn") return BlockKind::Mpnn;
  throw Error(ErrorCode::Schema, "unknown block kind: " + name);
}

// ---------------------------------------------------------------------------

GcnLayer::GcnLayer(const std::string& name, int d_in, int d_out, Rng& rng)
    : phi_(name + "/phi", {2 * d_in, d_out}, {}, {}, rng) {}

Tensor GcnLayer::forward(ad::Tape& tape, const graph::BatchedGraph& g,
                         const Tensor& h) {
  Tensor messages = tape.gather_rows(h, g.edge_src);
  Tensor aggregated = tape.segment_sum(messages, g.edge_dst, g.num_nodes, &g.in_csr);
  return phi_.forward(tape, tape.concat_cols(aggregated, h));
}

// ---------------------------------------------------------------------------

RgcnLayer::RgcnLayer(const std::string& name, int d_in, int d_out, int num_bases,
                     Rng& rng)
    : d_out_(d_out), num_bases_(num_bases) {
  w_self_ = ad::Parameter(name + "/w_self", ad::glorot_uniform(d_in, d_out, rng));
  bias_ = ad::Parameter(name + "/bias", Tensor::zeros(1, d_out));
  coeffs_ = ad::Parameter(name + "/coeffs",
                          ad::glorot_uniform(graph::kNumRelations, num_bases, rng));
  for (int b = 0; b < num_bases; ++b)
    bases_.emplace_back(name + "/basis" + std::to_string(b),
                        ad::glorot_uniform(d_in, d_out, rng));
}

Tensor RgcnLayer::forward(ad::Tape& tape, const graph::BatchedGraph& g,
                          const Tensor& h) {
  for (int rel : g.relation_ids)
    if (rel < 0 || rel >= graph::kNumRelations)
      throw Error(ErrorCode::UnknownRelation,
                  "rgcn: relation id " + std::to_string(rel));

  Tensor out = tape.matmul(h, tape.watch(w_self_));
  Tensor coeffs = tape.watch(coeffs_);
  Tensor messages;  // num_edges x d_out, accumulated over bases
  for (int b = 0; b < num_bases_; ++b) {
    Tensor projected = tape.matmul(h, tape.watch(bases_[b]));
    Tensor per_edge = tape.gather_rows(projected, g.edge_src);
    Tensor rel_coeff =
        tape.gather_rows(tape.slice_cols(coeffs, b, b + 1), g.relation_ids);
    Tensor scaled = tape.mul_rows(per_edge, rel_coeff);
    messages = b == 0 ? scaled : tape.add(messages, scaled);
  }
  Tensor aggregated = tape.segment_sum(messages, g.edge_dst, g.num_nodes, &g.in_csr);
  return tape.add_row_bias(tape.add(out, aggregated), tape.watch(bias_));
}

std::vector<ad::Parameter*> RgcnLayer::parameters() {
  std::vector<ad::Parameter*> out{&w_self_, &bias_, &coeffs_};
  for (auto& b : bases_) out.push_back(&b);
  return out;
}

// ---------------------------------------------------------------------------

GatLayer::GatLayer(const std::string& name, int d_in, int d_out, int heads,
                   double alpha, bool mean_merge, Rng& rng)
    : heads_(heads), alpha_(alpha), mean_merge_(mean_merge) {
  head_width_ = mean_merge ? d_out : (d_out + heads - 1) / heads;
  for (int k = 0; k < heads; ++k) {
    const std::string prefix = name + "/head" + std::to_string(k);
    w_.emplace_back(prefix + "/w", ad::glorot_uniform(d_in, head_width_, rng));
    a_src_.emplace_back(prefix + "/a_src", ad::glorot_uniform(head_width_, 1, rng));
    a_dst_.emplace_back(prefix + "/a_dst", ad::glorot_uniform(head_width_, 1, rng));
  }
}

int GatLayer::out_width() const {
  return mean_merge_ ? head_width_ : heads_ * head_width_;
}

Tensor GatLayer::forward(ad::Tape& tape, const graph::BatchedGraph& g,
                         const Tensor& h) {
  Tensor merged;
  for (int k = 0; k < heads_; ++k) {
    Tensor projected = tape.matmul(h, tape.watch(w_[k]));
    Tensor score_src = tape.matmul(projected, tape.watch(a_src_[k]));
    Tensor score_dst = tape.matmul(projected, tape.watch(a_dst_[k]));
    Tensor edge_score = tape.leaky_relu(
        tape.add(tape.gather_rows(score_src, g.edge_src),
                 tape.gather_rows(score_dst, g.edge_dst)),
        alpha_);
    Tensor attention = tape.segment_softmax(edge_score, g.edge_dst, g.num_nodes,
                                            &g.in_csr);
    Tensor weighted = tape.mul_rows(tape.gather_rows(projected, g.edge_src), attention);
    Tensor head_out = tape.segment_sum(weighted, g.edge_dst, g.num_nodes, &g.in_csr);
    if (k == 0)
      merged = head_out;
    else
      merged = mean_merge_ ? tape.add(merged, head_out)
                           : tape.concat_cols(merged, head_out);
  }
  if (mean_merge_ && heads_ > 1)
    merged = tape.scale(merged, 1.0 / static_cast<double>(heads_));
  return merged;
}

std::vector<ad::Parameter*> GatLayer::parameters() {
  std::vector<ad::Parameter*> out;
  for (int k = 0; k < heads_; ++k) {
    out.push_back(&w_[k]);
    out.push_back(&a_src_[k]);
    out.push_back(&a_dst_[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------

MpnnLayer::MpnnLayer(const std::string& name, int d_in, int d_out, double alpha,
                     Rng& rng)
    : message_(name + "/msg", {d_in + graph::kEdgeFeatureWidth, d_out}, {},
               {Act::LeakyRelu, alpha}, rng),
      update_(name + "/upd", {d_out + d_in, d_out}, {}, {}, rng) {}

Tensor MpnnLayer::forward(ad::Tape& tape, const graph::BatchedGraph& g,
                          const Tensor& h) {
  if (g.edge_features.cols() != graph::kEdgeFeatureWidth)
    throw Error(ErrorCode::ShapeMismatch, "mpnn: edge feature width");
  Tensor src_feats = tape.gather_rows(h, g.edge_src);
  Tensor messages =
      message_.forward(tape, tape.concat_cols(src_feats, g.edge_features));
  Tensor aggregated = tape.segment_sum(messages, g.edge_dst, g.num_nodes, &g.in_csr);
  return update_.forward(tape, tape.concat_cols(aggregated, h));
}

std::vector<ad::Parameter*> MpnnLayer::parameters() {
  auto out = message_.parameters();
  for (auto* p : update_.parameters()) out.push_back(p);
  return out;
}

}  // namespace socnav::gnn
