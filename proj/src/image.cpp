#include "socnav/heatmap/image.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "socnav/common/error.hpp"

namespace socnav::heatmap {

Image::Image(int width, int height, Color fill) : width_(width), height_(height) {
  rgb_.resize(static_cast<size_t>(width) * height * 3);
  for (size_t i = 0; i < rgb_.size(); i += 3) {
    rgb_[i] = fill.r;
    rgb_[i + 1] = fill.g;
    rgb_[i + 2] = fill.b;
  }
}

void Image::set(int x, int y, Color c) {
  if (x < 0 || x >= width_ || y < 0 || y >= height_) return;
  const size_t i = (static_cast<size_t>(y) * width_ + x) * 3;
  rgb_[i] = c.r;
  rgb_[i + 1] = c.g;
  rgb_[i + 2] = c.b;
}

void Image::fill_rect(int x0, int y0, int x1, int y1, Color c) {
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) set(x, y, c);
}

void Image::draw_line(int x0, int y0, int x1, int y1, Color c, int dash_on,
                      int dash_off) {
  // Bresenham with an optional dash pattern counted along the step index.
  const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  int step = 0;
  const int period = dash_on + dash_off;
  for (;;) {
    if (period == 0 || step % period < dash_on) set(x0, y0, c);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
    ++step;
  }
}

void Image::draw_circle(int cx, int cy, int radius, Color c, bool fill) {
  const int r2 = radius * radius;
  const int inner = (radius - 1) * (radius - 1);
  for (int y = -radius; y <= radius; ++y)
    for (int x = -radius; x <= radius; ++x) {
      const int d2 = x * x + y * y;
      if (d2 > r2) continue;
      if (!fill && d2 < inner) continue;
      set(cx + x, cy + y, c);
    }
}

// ---------------------------------------------------------------------------
// PNG writing: stored (uncompressed) deflate blocks inside a zlib stream.

namespace {

uint32_t crc32_table_entry(uint32_t n) {
  for (int k = 0; k < 8; ++k) n = (n & 1) ? 0xedb88320u ^ (n >> 1) : n >> 1;
  return n;
}

uint32_t crc32(const uint8_t* data, size_t len, uint32_t crc = 0xffffffffu) {
  static const auto table = [] {
    std::array<uint32_t, 256> t{};
    for (uint32_t n = 0; n < 256; ++n) t[n] = crc32_table_entry(n);
    return t;
  }();
  for (size_t i = 0; i < len; ++i) crc = table[(crc ^ data[i]) & 0xffu] ^ (crc >> 8);
  return crc;
}

uint32_t adler32(const uint8_t* data, size_t len) {
  uint32_t a = 1, b = 0;
  for (size_t i = 0; i < len; ++i) {
    a = (a + data[i]) % 65521u;
    b = (b + a) % 65521u;
  }
  return (b << 16) | a;
}

void put_u32(std::string& out, uint32_t v) {
  out.push_back(static_cast<char>(v >> 24));
  out.push_back(static_cast<char>(v >> 16));
  out.push_back(static_cast<char>(v >> 8));
  out.push_back(static_cast<char>(v));
}

void put_chunk(std::string& out, const char type[4], const std::string& payload) {
  put_u32(out, static_cast<uint32_t>(payload.size()));
  std::string body(type, 4);
  body += payload;
  out += body;
  put_u32(out, crc32(reinterpret_cast<const uint8_t*>(body.data()), body.size()) ^
                   0xffffffffu);
}

std::string deflate_stored(const std::string& raw) {
  std::string out;
  out.push_back('\x78');  // zlib header, 32k window
  out.push_back('\x01');  // no compression hint, FCHECK-valid
  size_t pos = 0;
  do {
    const size_t n = std::min<size_t>(raw.size() - pos, 65535);
    const bool last = pos + n == raw.size();
    out.push_back(last ? '\x01' : '\x00');
    out.push_back(static_cast<char>(n & 0xff));
    out.push_back(static_cast<char>(n >> 8));
    out.push_back(static_cast<char>(~n & 0xff));
    out.push_back(static_cast<char>((~n >> 8) & 0xff));
    out.append(raw, pos, n);
    pos += n;
  } while (pos < raw.size());
  put_u32(out, adler32(reinterpret_cast<const uint8_t*>(raw.data()), raw.size()));
  return out;
}

}  // namespace

void write_png(const Image& img, const std::string& path) {
  std::string out("\x89PNG\r\n\x1a\n", 8);

  std::string ihdr;
  put_u32(ihdr, static_cast<uint32_t>(img.width()));
  put_u32(ihdr, static_cast<uint32_t>(img.height()));
  ihdr.push_back(8);   // bit depth
  ihdr.push_back(2);   // truecolour
  ihdr.push_back(0);   // deflate
  ihdr.push_back(0);   // filter method
  ihdr.push_back(0);   // no interlace
  put_chunk(out, "IHDR", ihdr);

  std::string raw;
  raw.reserve(static_cast<size_t>(img.height()) * (1 + 3 * img.width()));
  const auto& px = img.pixels();
  for (int y = 0; y < img.height(); ++y) {
    raw.push_back('\0');  // filter type: none
    raw.append(reinterpret_cast<const char*>(px.data() +
                                             static_cast<size_t>(y) * img.width() * 3),
               static_cast<size_t>(img.width()) * 3);
  }
  put_chunk(out, "IDAT", deflate_stored(raw));
  put_chunk(out, "IEND", "");

  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::Io, "cannot open for writing: " + path);
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) throw Error(ErrorCode::Io, "short write: " + path);
}

void write_pgm(const Image& img, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::Io, "cannot open for writing: " + path);
  os << "P5\n" << img.width() << " " << img.height() << "\n255\n";
  const auto& px = img.pixels();
  std::string row(static_cast<size_t>(img.width()), '\0');
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const size_t i = (static_cast<size_t>(y) * img.width() + x) * 3;
      // integer luma, BT.601 weights
      row[static_cast<size_t>(x)] = static_cast<char>(
          (299 * px[i] + 587 * px[i + 1] + 114 * px[i + 2]) / 1000);
    }
    os.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
  if (!os) throw Error(ErrorCode::Io, "short write: " + path);
}

void write_image(const Image& img, const std::string& path) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".pgm") == 0)
    write_pgm(img, path);
  else
    write_png(img, path);
}

}  // namespace socnav::heatmap
