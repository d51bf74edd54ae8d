#include "socnav/heatmap/render.hpp"

#include <algorithm>
#include <cmath>

namespace socnav::heatmap {

namespace {

constexpr Color kRed{255, 0, 0};
constexpr Color kHuman{40, 70, 220};
constexpr Color kObject{40, 160, 70};
constexpr Color kGoal{30, 190, 60};
constexpr Color kInteraction{220, 40, 40};
constexpr Color kAxis{30, 30, 30};

struct Mapper {
  const ScoreGrid& grid;
  int cell_px;

  int px(double wx) const {
    return static_cast<int>(
        std::lround(((wx - grid.origin_x) / grid.resolution) * cell_px +
                    0.5 * cell_px));
  }
  int py(double wy) const {
    const double fr = (wy - grid.origin_y) / grid.resolution;
    return static_cast<int>(
        std::lround((grid.rows - 1 - fr) * cell_px + 0.5 * cell_px));
  }
  int radius(double metres) const {
    return std::max(2, static_cast<int>(std::lround(metres / grid.resolution *
                                                    cell_px)));
  }
};

}  // namespace

Image render_heatmap(const ScoreGrid& grid, const scene::Snapshot& scene,
                     const RenderOptions& options) {
  const int s = options.cell_pixels;
  Image img(grid.cols * s, grid.rows * s);

  for (int r = 0; r < grid.rows; ++r)
    for (int c = 0; c < grid.cols; ++c) {
      if (!grid.inside(r, c)) continue;
      const double score = grid.at(r, c);
      Color col;
      if (score < options.red_threshold) {
        col = kRed;
      } else {
        const auto grey = static_cast<uint8_t>(
            25 + std::lround(200.0 * std::clamp(score, 0.0, 1.0)));
        col = {grey, grey, grey};
      }
      const int y0 = (grid.rows - 1 - r) * s;
      img.fill_rect(c * s, y0, c * s + s - 1, y0 + s - 1, col);
    }

  const Mapper map{grid, s};

  // Dashed room-frame axes through the world origin.
  img.draw_line(map.px(0.0), 0, map.px(0.0), img.height() - 1, kAxis, 6, 4);
  img.draw_line(0, map.py(0.0), img.width() - 1, map.py(0.0), kAxis, 6, 4);

  // Interactions under the entity markers.
  for (const scene::Interaction& it : scene.interactions) {
    const scene::Vec2* a = nullptr;
    const scene::Vec2* b = nullptr;
    scene::Vec2 pa, pb;
    for (const auto& h : scene.humans) {
      if (h.id == it.source_id) { pa = {h.pose.x, h.pose.y}; a = &pa; }
      if (h.id == it.target_id) { pb = {h.pose.x, h.pose.y}; b = &pb; }
    }
    for (const auto& o : scene.objects) {
      if (o.id == it.source_id) { pa = {o.pose.x, o.pose.y}; a = &pa; }
      if (o.id == it.target_id) { pb = {o.pose.x, o.pose.y}; b = &pb; }
    }
    if (a && b)
      img.draw_line(map.px(a->x), map.py(a->y), map.px(b->x), map.py(b->y),
                    kInteraction);
  }

  for (const scene::ObjectEntity& o : scene.objects)
    img.draw_circle(map.px(o.pose.x), map.py(o.pose.y), map.radius(0.15), kObject,
                    /*fill=*/true);

  img.draw_circle(map.px(scene.goal.position.x), map.py(scene.goal.position.y),
                  map.radius(0.35), kGoal, /*fill=*/false);

  for (const scene::Human& h : scene.humans) {
    const int cx = map.px(h.pose.x);
    const int cy = map.py(h.pose.y);
    img.draw_circle(cx, cy, map.radius(0.25), kHuman, /*fill=*/false);
    // Heading tick.
    const scene::Vec2 dir = scene::heading_dir(h.pose.theta);
    img.draw_line(cx, cy, map.px(h.pose.x + 0.4 * dir.x), map.py(h.pose.y + 0.4 * dir.y),
                  kHuman);
  }

  return img;
}

void render_to_file(const ScoreGrid& grid, const scene::Snapshot& scene,
                    const std::string& path, const RenderOptions& options) {
  write_image(render_heatmap(grid, scene, options), path);
}

}  // namespace socnav::heatmap
