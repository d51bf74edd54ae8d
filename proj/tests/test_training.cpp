#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include <algorithm>
#include <set>
#include <span>

#include "socnav/graph/batch.hpp"
#include "socnav/scene/random_scenario.hpp"
#include "socnav/train/trainer.hpp"

using namespace socnav;
using namespace socnav::train;

namespace {

std::vector<scene::Scenario> synthetic_scenarios(int count, uint64_t seed0,
                                                 int snapshots = 5) {
  std::vector<scene::Scenario> out;
  for (int i = 0; i < count; ++i)
    out.push_back(scene::generate_random_scenario(
        seed0 + static_cast<uint64_t>(i), 2 + i % 3, i % 2,
        i % 2 ? scene::RoomKind::LShaped : scene::RoomKind::Rectangular, snapshots,
        4.0));
  return out;
}

std::string file_bytes(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  return std::string(std::istreambuf_iterator<char>(is), {});
}

}  // namespace

TEST_CASE("hyperparameter sampling stays in range over 1000 seeds") {
  int min_batch = 1000, max_batch = 0, min_layers = 100, max_layers = 0;
  double min_alpha = 1.0, max_alpha = 0.0;
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    const HyperParams hp = sample_hyperparams(seed);
    CHECK(hp.max_epochs == 1000);
    CHECK(hp.patience == 4);
    CHECK(hp.batch_size >= 25);
    CHECK(hp.batch_size <= 70);
    CHECK(hp.hidden_units >= 20);
    CHECK(hp.hidden_units <= 90);
    CHECK(hp.attention_heads >= 3);
    CHECK(hp.attention_heads <= 10);
    CHECK(hp.num_bases >= 4);
    CHECK(hp.num_bases <= 24);
    CHECK(hp.learning_rate >= 1e-4);
    CHECK(hp.learning_rate <= 5e-4);
    CHECK(hp.weight_decay >= 0.0);
    CHECK(hp.weight_decay <= 1e-6);
    CHECK(hp.layers >= 3);
    CHECK(hp.layers <= 9);
    CHECK(hp.dropout >= 0.0);
    CHECK(hp.dropout <= 1e-6);
    CHECK(hp.alpha >= 0.1);
    CHECK(hp.alpha <= 0.3);
    min_batch = std::min(min_batch, hp.batch_size);
    max_batch = std::max(max_batch, hp.batch_size);
    min_layers = std::min(min_layers, hp.layers);
    max_layers = std::max(max_layers, hp.layers);
    min_alpha = std::min(min_alpha, hp.alpha);
    max_alpha = std::max(max_alpha, hp.alpha);
  }
  // The sweep actually reaches the integer endpoints and fills the real range.
  CHECK(min_batch == 25);
  CHECK(max_batch == 70);
  CHECK(min_layers == 3);
  CHECK(max_layers == 9);
  CHECK(min_alpha < 0.11);
  CHECK(max_alpha > 0.29);
}

TEST_CASE("hyperparameter sampling is deterministic per seed") {
  const HyperParams a = sample_hyperparams(1234);
  const HyperParams b = sample_hyperparams(1234);
  CHECK(a.batch_size == b.batch_size);
  CHECK(a.learning_rate == b.learning_rate);
  CHECK(a.alpha == b.alpha);
  CHECK(a.block_kind == b.block_kind);
}

TEST_CASE("the published best configuration is expressible") {
  HyperParams hp;
  hp.batch_size = 57;
  hp.learning_rate = 2.5e-4;
  hp.weight_decay = 1e-6;
  hp.dropout = 0.0;
  hp.block_kind = gnn::BlockKind::Mpnn;
  hp.layers = 6;
  hp.widths_override = {40, 30, 21, 12, 3, 3};
  const auto cfg = hp.stack_config();
  CHECK(cfg.widths == std::vector<int>{40, 30, 21, 12, 3, 3});
  const auto round_trip = HyperParams::from_json(hp.to_json());
  CHECK(round_trip.batch_size == 57);
  CHECK(round_trip.widths_override == hp.widths_override);
}

TEST_CASE("width taper interpolates from hidden_units down to 3") {
  HyperParams hp;
  hp.hidden_units = 40;
  hp.layers = 6;
  const auto widths = hp.widths();
  REQUIRE(widths.size() == 6);
  CHECK(widths.front() == 40);
  CHECK(widths.back() == 3);
  for (size_t i = 0; i + 1 < widths.size(); ++i) CHECK(widths[i] >= widths[i + 1]);
}

TEST_CASE("build_dataset: 4x counts under augmentation, labels shared") {
  const auto scenarios = synthetic_scenarios(10, 100);
  const auto plain = build_dataset(scenarios, false);
  CHECK(plain.size() == 10);
  const auto augmented = build_dataset(scenarios, true);
  CHECK(augmented.size() == 40);

  for (size_t base = 0; base < 10; ++base) {
    const Sample& s0 = augmented[base * 4];
    for (int v = 1; v < 4; ++v) {
      const Sample& sv = augmented[base * 4 + static_cast<size_t>(v)];
      CHECK(sv.base_id == s0.base_id);
      CHECK(sv.variant == v);
      CHECK(sv.graph.label_q1 == s0.graph.label_q1);
      CHECK(sv.graph.label_q2 == s0.graph.label_q2);
      // Distances are invariant under both augmentations.
      REQUIRE(sv.graph.num_edges() == s0.graph.num_edges());
      for (int k = 0; k < s0.graph.num_edges(); ++k)
        CHECK(sv.graph.edge_features.at(k, graph::kNumRelations) ==
              doctest::Approx(s0.graph.edge_features.at(k, graph::kNumRelations))
                  .epsilon(1e-9));
    }
  }
  // Labels live in [0, 1] after scaling.
  for (const Sample& s : augmented) {
    CHECK(s.graph.label_q1 >= 0.0);
    CHECK(s.graph.label_q1 <= 1.0);
  }
}

TEST_CASE("early stopper fires after patience non-improving epochs") {
  EarlyStopper stopper(4);
  CHECK(!stopper.update(1.0));  // epoch 1 establishes the best
  CHECK(!stopper.update(1.1));  // epoch 2
  CHECK(!stopper.update(1.2));  // epoch 3
  CHECK(!stopper.update(1.3));  // epoch 4
  CHECK(stopper.update(1.4));   // epoch 5: fourth bad epoch in a row
  CHECK(stopper.best() == 1.0);
}

TEST_CASE("early stopper resets on improvement and ignores ties") {
  EarlyStopper stopper(2);
  CHECK(!stopper.update(1.0));
  CHECK(!stopper.update(1.5));
  CHECK(!stopper.update(0.5));  // improvement resets
  CHECK(!stopper.update(0.5));  // tie is not an improvement
  CHECK(stopper.update(0.6));
}

TEST_CASE("split manifest round-trips and rejects overlaps") {
  DatasetSplits s;
  s.train = {"a", "b"};
  s.dev = {"c"};
  s.test = {"d"};
  const std::string path = "splits_test.json";
  s.save(path);
  const DatasetSplits loaded = DatasetSplits::load(path);
  CHECK(loaded.train == s.train);
  CHECK(loaded.hash() == s.hash());
  std::remove(path.c_str());

  nlohmann::json bad = s.to_json();
  bad["dev"].push_back("a");
  CHECK_THROWS_AS((void)DatasetSplits::from_json(bad), Error);
}

TEST_CASE("make_splits partitions ids deterministically") {
  std::vector<std::string> ids;
  for (int i = 0; i < 100; ++i) ids.push_back("s" + std::to_string(i));
  const DatasetSplits a = make_splits(ids, 0.1, 0.1, 9);
  const DatasetSplits b = make_splits(ids, 0.1, 0.1, 9);
  CHECK(a.hash() == b.hash());
  CHECK(a.dev.size() == 10);
  CHECK(a.test.size() == 10);
  CHECK(a.train.size() == 80);
  std::set<std::string> all(a.train.begin(), a.train.end());
  all.insert(a.dev.begin(), a.dev.end());
  all.insert(a.test.begin(), a.test.end());
  CHECK(all.size() == 100);
}

TEST_CASE("evaluate: constant 0.5 predictor against balanced 0/1 labels") {
  auto scenarios = synthetic_scenarios(2, 300);
  scenarios[0].label_q1 = 0.0;
  scenarios[0].label_q2 = 0.0;
  scenarios[1].label_q1 = 100.0;
  scenarios[1].label_q2 = 100.0;
  auto samples = build_dataset(scenarios, false);

  HyperParams hp;
  hp.widths_override = {5, 3};
  gnn::GnnStack model(hp.stack_config());
  for (auto* p : model.parameters())
    if (p->name.rfind("head/", 0) == 0)
      for (int64_t i = 0; i < p->value.size(); ++i) p->value.data()[i] = 0.0;

  const std::vector<int> idx{0, 1};
  CHECK(evaluate(model, samples, idx) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("evaluate is invariant to the evaluation batch size") {
  const auto samples = build_dataset(synthetic_scenarios(7, 400), false);
  HyperParams hp;
  hp.widths_override = {6, 3};
  hp.rng_seed = 77;
  gnn::GnnStack model(hp.stack_config());
  std::vector<int> idx;
  for (int i = 0; i < 7; ++i) idx.push_back(i);
  const double m1 = evaluate(model, samples, idx, 1);
  const double m3 = evaluate(model, samples, idx, 3);
  const double m64 = evaluate(model, samples, idx, 64);
  CHECK(m1 == m3);
  CHECK(m3 == m64);
}

TEST_CASE("overfit: one sample reaches train MSE < 1e-4 within 200 epochs") {
  const auto scenarios = synthetic_scenarios(1, 500);
  const auto samples = build_dataset(scenarios, false);
  DatasetSplits splits;
  splits.train = {scenarios[0].id};
  splits.dev = {scenarios[0].id};

  HyperParams hp;
  hp.max_epochs = 200;
  hp.patience = 200;
  hp.batch_size = 1;
  hp.learning_rate = 5e-3;
  hp.weight_decay = 0.0;
  hp.widths_override = {8, 4, 3};
  hp.block_kind = gnn::BlockKind::Mpnn;
  hp.rng_seed = 3;

  const Checkpoint ckpt = socnav::train::train(hp, splits, samples);
  REQUIRE(!ckpt.history.train_mse.empty());
  CHECK(ckpt.history.train_mse.back() < 1e-4);
}

TEST_CASE("training is bitwise deterministic given identical inputs") {
  const auto scenarios = synthetic_scenarios(6, 600);
  const auto samples = build_dataset(scenarios, false);
  DatasetSplits splits;
  for (int i = 0; i < 4; ++i) splits.train.push_back(scenarios[static_cast<size_t>(i)].id);
  splits.dev = {scenarios[4].id};
  splits.test = {scenarios[5].id};

  HyperParams hp;
  hp.max_epochs = 4;
  hp.patience = 4;
  hp.batch_size = 2;
  hp.learning_rate = 1e-3;
  hp.widths_override = {6, 3};
  hp.block_kind = gnn::BlockKind::Gat;
  hp.attention_heads = 2;
  hp.rng_seed = 11;

  const Checkpoint a = socnav::train::train(hp, splits, samples);
  const Checkpoint b = socnav::train::train(hp, splits, samples);
  CHECK(a.history.train_mse == b.history.train_mse);
  CHECK(a.history.dev_mse == b.history.dev_mse);
  a.save("ckpt_a.bin");
  b.save("ckpt_b.bin");
  CHECK(file_bytes("ckpt_a.bin") == file_bytes("ckpt_b.bin"));
  std::remove("ckpt_a.bin");
  std::remove("ckpt_b.bin");
}

TEST_CASE("returned parameters match the best dev epoch") {
  const auto scenarios = synthetic_scenarios(8, 700);
  const auto samples = build_dataset(scenarios, false);
  DatasetSplits splits;
  for (int i = 0; i < 6; ++i) splits.train.push_back(scenarios[static_cast<size_t>(i)].id);
  splits.dev = {scenarios[6].id, scenarios[7].id};

  HyperParams hp;
  hp.max_epochs = 10;
  hp.patience = 3;
  hp.batch_size = 3;
  hp.learning_rate = 2e-3;
  hp.widths_override = {6, 3};
  hp.rng_seed = 5;

  const Checkpoint ckpt = socnav::train::train(hp, splits, samples);
  const double best = *std::min_element(ckpt.history.dev_mse.begin(),
                                        ckpt.history.dev_mse.end());
  CHECK(ckpt.history.best_dev_mse == doctest::Approx(best).epsilon(1e-15));

  // Re-evaluating the stored parameters reproduces the recorded best.
  auto model = ckpt.build_model();
  const auto dev_idx = split_indices(samples, splits.dev);
  CHECK(evaluate(*model, samples, dev_idx, hp.batch_size) ==
        doctest::Approx(ckpt.history.best_dev_mse).epsilon(1e-12));
}

TEST_CASE("checkpoint round-trip preserves predictions exactly") {
  const auto samples = build_dataset(synthetic_scenarios(3, 800), false);
  HyperParams hp;
  hp.widths_override = {7, 3};
  hp.block_kind = gnn::BlockKind::Rgcn;
  hp.num_bases = 4;
  hp.rng_seed = 19;
  gnn::GnnStack model(hp.stack_config());

  std::vector<const graph::SocialGraph*> ptrs;
  for (const auto& s : samples) ptrs.push_back(&s.graph);
  const graph::BatchedGraph probe =
      graph::batch_graphs(std::span<const graph::SocialGraph* const>(ptrs));
  ad::Tape tape(false);
  const ad::Tensor before = model.forward(tape, probe);

  Checkpoint ckpt = Checkpoint::of_model(model, hp, {}, "hash");
  ckpt.save("ckpt_rt.bin");
  const Checkpoint loaded = Checkpoint::load("ckpt_rt.bin");
  CHECK(loaded.manifest_hash == "hash");
  auto restored = loaded.build_model();
  const ad::Tensor after = restored->forward(tape, probe);
  for (int r = 0; r < before.rows(); ++r)
    for (int c = 0; c < 2; ++c) CHECK(before.at(r, c) == after.at(r, c));
  std::remove("ckpt_rt.bin");
}

TEST_CASE("corrupted checkpoints are rejected loudly") {
  const auto samples = build_dataset(synthetic_scenarios(1, 900), false);
  HyperParams hp;
  hp.widths_override = {4, 3};
  gnn::GnnStack model(hp.stack_config());
  Checkpoint ckpt = Checkpoint::of_model(model, hp, {}, "");
  ckpt.save("ckpt_bad.bin");

  // Flip a byte inside the JSON manifest region.
  {
    std::fstream f("ckpt_bad.bin", std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(24);
    f.put('~');
  }
  CHECK_THROWS_AS((void)Checkpoint::load("ckpt_bad.bin"), Error);
  std::remove("ckpt_bad.bin");
}

TEST_CASE("a zero-head checkpoint predicts 0.5 after reload") {
  const auto samples = build_dataset(synthetic_scenarios(1, 1000), false);
  HyperParams hp;
  hp.widths_override = {4, 3};
  gnn::GnnStack model(hp.stack_config());
  for (auto* p : model.parameters())
    if (p->name.rfind("head/", 0) == 0)
      for (int64_t i = 0; i < p->value.size(); ++i) p->value.data()[i] = 0.0;
  Checkpoint ckpt = Checkpoint::of_model(model, hp, {}, "");
  ckpt.save("ckpt_zero.bin");
  auto restored = Checkpoint::load("ckpt_zero.bin").build_model();

  const graph::BatchedGraph probe =
      graph::batch_graphs(std::vector<graph::SocialGraph>{samples[0].graph});
  ad::Tape tape(false);
  const ad::Tensor preds = restored->forward(tape, probe);
  CHECK(preds.at(0, 0) == 0.5);
  CHECK(preds.at(0, 1) == 0.5);
  std::remove("ckpt_zero.bin");
}
