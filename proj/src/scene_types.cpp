#include "socnav/scene/types.hpp"

namespace socnav::scene {

Vec2 room_reference(const std::vector<WallSegment>& walls) {
  if (walls.empty()) return {0.0, 0.0};
  // Each polygon vertex appears exactly once as a segment start.
  Vec2 acc{0.0, 0.0};
  for (const auto& w : walls) {
    acc.x += w.start.x;
    acc.y += w.start.y;
  }
  acc.x /= static_cast<double>(walls.size());
  acc.y /= static_cast<double>(walls.size());
  return acc;
}

}  // namespace socnav::scene
