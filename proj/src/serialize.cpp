#include "socnav/ad/serialize.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

namespace socnav::ad {

namespace {

constexpr char kMagic[8] = {'S', 'N', 'T', 'E', 'N', 'S', '0', '1'};

static_assert(std::endian::native == std::endian::little,
              "payload writer assumes a little-endian host");

void write_u64(std::ostream& os, uint64_t v) {
  char buf[8];
  std::memcpy(buf, &v, 8);
  os.write(buf, 8);
}

uint64_t read_u64(std::istream& is) {
  char buf[8];
  is.read(buf, 8);
  uint64_t v = 0;
  std::memcpy(&v, buf, 8);
  return v;
}

}  // namespace

void TensorArchive::save(const std::string& path) const {
  nlohmann::json manifest;
  manifest["format_version"] = kFormatVersion;
  manifest["extra"] = extra;
  nlohmann::json list = nlohmann::json::array();
  uint64_t offset = 0;
  for (const auto& [name, t] : tensors) {
    list.push_back({{"name", name},
                    {"rows", t.rows()},
                    {"cols", t.cols()},
                    {"offset", offset}});
    offset += static_cast<uint64_t>(t.size()) * sizeof(double);
  }
  manifest["tensors"] = std::move(list);
  const std::string text = manifest.dump();

  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::Io, "cannot open for writing: " + path);
  os.write(kMagic, 8);
  write_u64(os, text.size());
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (const auto& [name, t] : tensors)
    os.write(reinterpret_cast<const char*>(t.data()),
             static_cast<std::streamsize>(t.size() * sizeof(double)));
  if (!os) throw Error(ErrorCode::Io, "short write: " + path);
}

TensorArchive TensorArchive::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::Io, "cannot open for reading: " + path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kMagic, 8) != 0)
    throw Error(ErrorCode::VersionMismatch, "bad magic in " + path);
  const uint64_t len = read_u64(is);
  std::string text(len, '\0');
  is.read(text.data(), static_cast<std::streamsize>(len));
  if (!is) throw Error(ErrorCode::Io, "truncated manifest in " + path);

  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Schema, std::string("manifest parse: ") + e.what());
  }
  if (!manifest.contains("format_version") ||
      manifest["format_version"].get<int>() != kFormatVersion)
    throw Error(ErrorCode::VersionMismatch, "unsupported container version in " + path);

  TensorArchive out;
  out.extra = manifest.value("extra", nlohmann::json::object());
  const auto payload_start = is.tellg();
  for (const auto& entry : manifest.at("tensors")) {
    const std::string name = entry.at("name").get<std::string>();
    const int rows = entry.at("rows").get<int>();
    const int cols = entry.at("cols").get<int>();
    const uint64_t offset = entry.at("offset").get<uint64_t>();
    Tensor t(rows, cols);
    is.seekg(payload_start + static_cast<std::streamoff>(offset));
    is.read(reinterpret_cast<char*>(t.data()),
            static_cast<std::streamsize>(t.size() * sizeof(double)));
    if (!is) throw Error(ErrorCode::Io, "truncated payload for tensor " + name);
    out.tensors.emplace(name, std::move(t));
  }
  return out;
}

}  // namespace socnav::ad
