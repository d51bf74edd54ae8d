#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace socnav::heatmap {

struct Color {
  uint8_t r = 0, g = 0, b = 0;
};

// Simple RGB raster with integer drawing primitives. All rasterisation is
// integer-deterministic so rendered files are byte-stable.
class Image {
 public:
  Image(int width, int height, Color fill = {255, 255, 255});

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<uint8_t>& pixels() const { return rgb_; }

  void set(int x, int y, Color c);
  void fill_rect(int x0, int y0, int x1, int y1, Color c);  // inclusive corners
  void draw_line(int x0, int y0, int x1, int y1, Color c, int dash_on = 0,
                 int dash_off = 0);
  void draw_circle(int cx, int cy, int radius, Color c, bool fill);

 private:
  int width_;
  int height_;
  std::vector<uint8_t> rgb_;
};

// Minimal PNG encoder (8-bit RGB, stored deflate blocks); output depends
// only on the pixel data.
void write_png(const Image& img, const std::string& path);

// Greyscale PGM fallback (luma of the RGB raster).
void write_pgm(const Image& img, const std::string& path);

// Picks the writer from the file extension (.png or .pgm).
void write_image(const Image& img, const std::string& path);

}  // namespace socnav::heatmap
