#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "socnav/graph/build.hpp"
#include "socnav/scene/types.hpp"

namespace socnav::train {

// One training example: the merged graph plus the base scenario it came
// from. Augmented variants share the base id so splits can be made
// leakage-free.
struct Sample {
  std::string base_id;
  int variant = 0;  // 0 original, 1 mirrored, 2 rotated, 3 mirrored+rotated
  graph::SocialGraph graph;
};

// Builds graphs for the scenarios; with `augment` each scenario contributes
// its original, mirrored, rotated and mirrored+rotated variants (4x), all
// carrying the original labels.
std::vector<Sample> build_dataset(const std::vector<scene::Scenario>& scenarios,
                                  bool augment);

// Manifest-driven split by base scenario id.
struct DatasetSplits {
  std::vector<std::string> train;
  std::vector<std::string> dev;
  std::vector<std::string> test;

  nlohmann::json to_json() const;
  static DatasetSplits from_json(const nlohmann::json& j);
  static DatasetSplits load(const std::string& path);
  void save(const std::string& path) const;

  // FNV-1a over the serialized manifest; stored in checkpoints.
  std::string hash() const;
};

// Random split by base id (augmented twins never cross splits),
// deterministic per seed. Fractions are of the id count; train gets the
// rest.
DatasetSplits make_splits(std::vector<std::string> base_ids, double dev_fraction,
                          double test_fraction, uint64_t seed);

// Indices of samples whose base id belongs to the given id list.
std::vector<int> split_indices(const std::vector<Sample>& samples,
                               const std::vector<std::string>& ids);

}  // namespace socnav::train
