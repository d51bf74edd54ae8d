#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "socnav/gnn/stack.hpp"
#include "socnav/scene/types.hpp"

namespace socnav::heatmap {

enum class Question { Q1 = 0, Q2 = 1 };

// A robot-position sweep over the room: the scene is kept as recorded, the
// robot frame is re-placed at every grid cell with a fixed orientation and
// action, and the model is queried per cell.
struct SweepSpec {
  Question question = Question::Q1;
  double adv = 0.4;
  double rot = 0.0;
  double resolution = 0.25;  // metres per cell
  // Robot heading used at every cell; defaults to the scored frame's
  // recorded orientation.
  std::optional<double> orientation;
  double frame_spacing_s = 1.0;
};

// Regular grid of model scores; cells outside the wall polygon carry NaN.
struct ScoreGrid {
  int rows = 0;
  int cols = 0;
  double origin_x = 0.0;  // world position of cell (0, 0)
  double origin_y = 0.0;
  double resolution = 0.0;
  std::vector<double> scores;  // rows * cols, row-major; NaN = outside

  double at(int r, int c) const { return scores[static_cast<size_t>(r) * cols + c]; }
  double& at(int r, int c) { return scores[static_cast<size_t>(r) * cols + c]; }
  bool inside(int r, int c) const { return !std::isnan(at(r, c)); }
  double cell_x(int c) const { return origin_x + resolution * c; }
  double cell_y(int r) const { return origin_y + resolution * r; }

  // Header `x,y,score`, one line per in-room cell, full double precision.
  std::string to_csv() const;
  // Rebuilds a grid from CSV given the geometry (cells absent from the CSV
  // are outside).
  static ScoreGrid from_csv(const std::string& text, int rows, int cols,
                            double origin_x, double origin_y, double resolution);
};

// Point-in-polygon over the wall loop; boundary points count as inside.
bool point_in_room(const std::vector<scene::WallSegment>& walls, double x, double y);

// Evaluates the model for every in-room cell of the scored frame's room.
// Cell evaluations are independent; they are batched and the result does
// not depend on evaluation order.
ScoreGrid sweep(gnn::GnnStack& model, const scene::Scenario& scenario,
                const SweepSpec& spec);

}  // namespace socnav::heatmap
