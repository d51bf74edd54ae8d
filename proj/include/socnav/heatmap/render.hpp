#pragma once

#include "socnav/heatmap/image.hpp"
#include "socnav/heatmap/sweep.hpp"
#include "socnav/scene/types.hpp"

namespace socnav::heatmap {

struct RenderOptions {
  int cell_pixels = 8;
  // Scores under this render as pure red ("unacceptable"); above, a grey
  // whose lightness grows with the score.
  double red_threshold = 0.1;
};

// Draws the score grid with the scene overlaid: oriented blue circles for
// humans, small green circles for objects, a wider green circle for the
// goal, red lines for interactions and dashed axes through the room frame
// origin. Outside cells stay white. Deterministic bytes for fixed inputs.
Image render_heatmap(const ScoreGrid& grid, const scene::Snapshot& scene,
                     const RenderOptions& options = {});

// Renders and writes PNG or PGM depending on the extension.
void render_to_file(const ScoreGrid& grid, const scene::Snapshot& scene,
                    const std::string& path, const RenderOptions& options = {});

}  // namespace socnav::heatmap
