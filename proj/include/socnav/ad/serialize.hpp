#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "socnav/ad/tensor.hpp"

namespace socnav::ad {

// Binary container for a named flat map of float64 tensors:
//   8-byte magic | u64 little-endian manifest length | JSON manifest | payload
// The manifest records format version, tensor names/shapes/offsets and an
// open `extra` object for callers (hyperparameters, history, ...). Payload
// values are little-endian float64 in manifest order.
struct TensorArchive {
  static constexpr int kFormatVersion = 1;

  std::map<std::string, Tensor> tensors;
  nlohmann::json extra = nlohmann::json::object();

  void save(const std::string& path) const;

  // Throws Error(VersionMismatch) on wrong magic or format version, and
  // Error(Io)/Error(Schema) on unreadable or malformed files.
  static TensorArchive load(const std::string& path);
};

}  // namespace socnav::ad
