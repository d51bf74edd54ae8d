#include "socnav/train/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "socnav/common/error.hpp"
#include "socnav/common/rng.hpp"
#include "socnav/scene/augment.hpp"

namespace socnav::train {

std::vector<Sample> build_dataset(const std::vector<scene::Scenario>& scenarios,
                                  bool augment) {
  std::vector<Sample> out;
  out.reserve(scenarios.size() * (augment ? 4 : 1));
  for (const scene::Scenario& s : scenarios) {
    out.push_back({s.id, 0, graph::scenario_to_graph(s)});
    if (!augment) continue;
    const scene::Scenario mirrored = scene::mirror(s);
    const scene::Scenario rotated = scene::rotate_half_turn(s);
    const scene::Scenario both = scene::rotate_half_turn(mirrored);
    out.push_back({s.id, 1, graph::scenario_to_graph(mirrored)});
    out.push_back({s.id, 2, graph::scenario_to_graph(rotated)});
    out.push_back({s.id, 3, graph::scenario_to_graph(both)});
  }
  return out;
}

nlohmann::json DatasetSplits::to_json() const {
  return {{"train", train}, {"dev", dev}, {"test", test}};
}

DatasetSplits DatasetSplits::from_json(const nlohmann::json& j) {
  DatasetSplits s;
  s.train = j.at("train").get<std::vector<std::string>>();
  s.dev = j.at("dev").get<std::vector<std::string>>();
  s.test = j.at("test").get<std::vector<std::string>>();
  std::set<std::string> seen;
  for (const auto* list : {&s.train, &s.dev, &s.test})
    for (const std::string& id : *list)
      if (!seen.insert(id).second)
        throw Error(ErrorCode::Schema, "split manifest: id in two splits: " + id);
  return s;
}

DatasetSplits DatasetSplits::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::Io, "cannot open manifest: " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Schema, path + ": " + e.what());
  }
  return from_json(j);
}

void DatasetSplits::save(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::Io, "cannot open for writing: " + path);
  os << to_json().dump(2) << "\n";
}

std::string DatasetSplits::hash() const {
  const std::string text = to_json().dump();
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

DatasetSplits make_splits(std::vector<std::string> base_ids, double dev_fraction,
                          double test_fraction, uint64_t seed) {
  std::sort(base_ids.begin(), base_ids.end());
  base_ids.erase(std::unique(base_ids.begin(), base_ids.end()), base_ids.end());
  Rng rng(seed ^ 0x5851f42d4c957f2dULL);
  rng.shuffle(base_ids);
  const size_t n = base_ids.size();
  const size_t n_dev = static_cast<size_t>(dev_fraction * static_cast<double>(n));
  const size_t n_test = static_cast<size_t>(test_fraction * static_cast<double>(n));
  if (n_dev + n_test >= n)
    throw Error(ErrorCode::Schema, "make_splits: nothing left for training");
  DatasetSplits s;
  s.dev.assign(base_ids.begin(), base_ids.begin() + n_dev);
  s.test.assign(base_ids.begin() + n_dev, base_ids.begin() + n_dev + n_test);
  s.train.assign(base_ids.begin() + n_dev + n_test, base_ids.end());
  return s;
}

std::vector<int> split_indices(const std::vector<Sample>& samples,
                               const std::vector<std::string>& ids) {
  const std::set<std::string> wanted(ids.begin(), ids.end());
  std::vector<int> out;
  for (size_t i = 0; i < samples.size(); ++i)
    if (wanted.count(samples[i].base_id)) out.push_back(static_cast<int>(i));
  return out;
}

}  // namespace socnav::train
