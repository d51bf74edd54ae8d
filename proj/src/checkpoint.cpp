#include "socnav/train/checkpoint.hpp"

#include "socnav/ad/serialize.hpp"
#include "socnav/common/error.hpp"

namespace socnav::train {

namespace {
constexpr const char* kCheckpointSchema = "socnav-checkpoint";
constexpr int kCheckpointVersion = 1;
}  // namespace

nlohmann::json TrainHistory::to_json() const {
  return {{"train_mse", train_mse},
          {"dev_mse", dev_mse},
          {"best_epoch", best_epoch},
          {"best_dev_mse", best_dev_mse},
          {"stop_reason", stop_reason}};
}

TrainHistory TrainHistory::from_json(const nlohmann::json& j) {
  TrainHistory h;
  h.train_mse = j.value("train_mse", std::vector<double>{});
  h.dev_mse = j.value("dev_mse", std::vector<double>{});
  h.best_epoch = j.value("best_epoch", -1);
  h.best_dev_mse = j.value("best_dev_mse", 0.0);
  h.stop_reason = j.value("stop_reason", std::string{});
  return h;
}

void Checkpoint::save(const std::string& path) const {
  ad::TensorArchive archive;
  archive.tensors = parameters;
  archive.extra["schema"] = kCheckpointSchema;
  archive.extra["checkpoint_version"] = kCheckpointVersion;
  archive.extra["hyperparams"] = hyperparams.to_json();
  archive.extra["history"] = history.to_json();
  archive.extra["manifest_hash"] = manifest_hash;
  archive.save(path);
}

Checkpoint Checkpoint::load(const std::string& path) {
  ad::TensorArchive archive = ad::TensorArchive::load(path);
  if (archive.extra.value("schema", std::string{}) != kCheckpointSchema ||
      archive.extra.value("checkpoint_version", -1) != kCheckpointVersion)
    throw Error(ErrorCode::VersionMismatch,
                path + ": not a compatible checkpoint");
  Checkpoint c;
  c.hyperparams = HyperParams::from_json(archive.extra.at("hyperparams"));
  c.history = TrainHistory::from_json(archive.extra.value("history", nlohmann::json::object()));
  c.manifest_hash = archive.extra.value("manifest_hash", std::string{});
  c.parameters = std::move(archive.tensors);
  return c;
}

std::unique_ptr<gnn::GnnStack> Checkpoint::build_model() const {
  auto model = std::make_unique<gnn::GnnStack>(hyperparams.stack_config());
  model->load_parameters(parameters);
  return model;
}

Checkpoint Checkpoint::of_model(gnn::GnnStack& model, const HyperParams& hp,
                                TrainHistory history, std::string manifest_hash) {
  Checkpoint c;
  c.hyperparams = hp;
  c.history = std::move(history);
  c.manifest_hash = std::move(manifest_hash);
  for (auto& [name, value] : model.named_parameters())
    c.parameters.emplace(name, value.clone());
  return c;
}

}  // namespace socnav::train
