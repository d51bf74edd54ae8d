#include "socnav/heatmap/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "socnav/common/error.hpp"
#include "socnav/graph/batch.hpp"
#include "socnav/graph/build.hpp"
#include "socnav/scene/frames.hpp"

namespace socnav::heatmap {

namespace {

constexpr double kBoundaryEps = 1e-9;

double point_segment_distance(const scene::WallSegment& w, double x, double y) {
  const double dx = w.end.x - w.start.x;
  const double dy = w.end.y - w.start.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((x - w.start.x) * dx + (y - w.start.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double px = w.start.x + t * dx;
  const double py = w.start.y + t * dy;
  return std::hypot(x - px, y - py);
}

}  // namespace

bool point_in_room(const std::vector<scene::WallSegment>& walls, double x, double y) {
  for (const auto& w : walls)
    if (point_segment_distance(w, x, y) <= kBoundaryEps) return true;
  // Ray cast toward +x.
  bool inside = false;
  for (const auto& w : walls) {
    const double y1 = w.start.y, y2 = w.end.y;
    if ((y1 > y) == (y2 > y)) continue;
    const double t = (y - y1) / (y2 - y1);
    const double xc = w.start.x + t * (w.end.x - w.start.x);
    if (xc > x) inside = !inside;
  }
  return inside;
}

std::string ScoreGrid::to_csv() const {
  std::ostringstream os;
  os << "x,y,score\n";
  char buf[96];
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (!inside(r, c)) continue;
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", cell_x(c), cell_y(r),
                    at(r, c));
      os << buf;
    }
  return os.str();
}

ScoreGrid ScoreGrid::from_csv(const std::string& text, int rows, int cols,
                              double origin_x, double origin_y, double resolution) {
  ScoreGrid g;
  g.rows = rows;
  g.cols = cols;
  g.origin_x = origin_x;
  g.origin_y = origin_y;
  g.resolution = resolution;
  g.scores.assign(static_cast<size_t>(rows) * cols,
                  std::numeric_limits<double>::quiet_NaN());
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "x,y,score")
    throw Error(ErrorCode::Schema, "grid csv: missing header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const char* p = line.c_str();
    char* end = nullptr;
    const double x = std::strtod(p, &end);
    if (*end != ',') throw Error(ErrorCode::Schema, "grid csv: bad line: " + line);
    const double y = std::strtod(end + 1, &end);
    if (*end != ',') throw Error(ErrorCode::Schema, "grid csv: bad line: " + line);
    const double score = std::strtod(end + 1, &end);
    const int c = static_cast<int>(std::lround((x - origin_x) / resolution));
    const int r = static_cast<int>(std::lround((y - origin_y) / resolution));
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw Error(ErrorCode::Schema, "grid csv: cell outside geometry: " + line);
    g.at(r, c) = score;
  }
  return g;
}

ScoreGrid sweep(gnn::GnnStack& model, const scene::Scenario& scenario,
                const SweepSpec& spec) {
  if (spec.resolution <= 0.0)
    throw Error(ErrorCode::ShapeMismatch, "sweep: resolution must be positive");

  const scene::FrameTriple triple = scene::select_frames(scenario, spec.frame_spacing_s);
  const scene::Snapshot& scored = *triple.frames[2];
  if (scored.walls.empty())
    throw Error(ErrorCode::ShapeMismatch, "sweep: scenario has no walls");

  double min_x = scored.walls[0].start.x, max_x = min_x;
  double min_y = scored.walls[0].start.y, max_y = min_y;
  for (const auto& w : scored.walls) {
    for (const auto& p : {w.start, w.end}) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }

  ScoreGrid grid;
  grid.resolution = spec.resolution;
  grid.origin_x = min_x;
  grid.origin_y = min_y;
  grid.cols = static_cast<int>(std::floor((max_x - min_x) / spec.resolution + 0.5)) + 1;
  grid.rows = static_cast<int>(std::floor((max_y - min_y) / spec.resolution + 0.5)) + 1;
  grid.scores.assign(static_cast<size_t>(grid.rows) * grid.cols,
                     std::numeric_limits<double>::quiet_NaN());

  struct Cell {
    int r, c;
    double x, y;
  };
  std::vector<Cell> cells;
  for (int r = 0; r < grid.rows; ++r)
    for (int c = 0; c < grid.cols; ++c) {
      const double x = grid.cell_x(c);
      const double y = grid.cell_y(r);
      if (point_in_room(scored.walls, x, y)) cells.push_back({r, c, x, y});
    }

  const double orientation = spec.orientation.value_or(scored.robot.pose.theta);

  // Graph construction per cell is independent; build in parallel, evaluate
  // in fixed-order batches.
  std::vector<graph::SocialGraph> graphs(cells.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
    const Cell& cell = cells[static_cast<size_t>(i)];
    scene::Snapshot frames[3] = {*triple.frames[0], *triple.frames[1], *triple.frames[2]};
    scene::FrameTriple moved;
    for (int f = 0; f < 3; ++f) {
      frames[f].robot.pose = {cell.x, cell.y, orientation};
      frames[f].robot.adv = spec.adv;
      frames[f].robot.rot = spec.rot;
      moved.frames[f] = &frames[f];
      moved.indices[f] = triple.indices[f];
    }
    graphs[static_cast<size_t>(i)] =
        graph::triple_to_graph(moved, scenario.id, scenario.label_q1, scenario.label_q2);
  }

  const int question = static_cast<int>(spec.question);
  constexpr size_t kBatch = 256;
  for (size_t lo = 0; lo < cells.size(); lo += kBatch) {
    const size_t hi = std::min(cells.size(), lo + kBatch);
    std::vector<const graph::SocialGraph*> ptrs;
    ptrs.reserve(hi - lo);
    for (size_t i = lo; i < hi; ++i) ptrs.push_back(&graphs[i]);
    const graph::BatchedGraph batch =
        graph::batch_graphs(std::span<const graph::SocialGraph* const>(ptrs));
    ad::Tape tape(/*recording=*/false);
    const ad::Tensor preds = model.forward(tape, batch);
    for (size_t i = lo; i < hi; ++i)
      grid.at(cells[i].r, cells[i].c) = preds.at(static_cast<int>(i - lo), question);
  }
  return grid;
}

}  // namespace socnav::heatmap
