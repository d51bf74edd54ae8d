#include "socnav/graph/social_graph.hpp"

namespace socnav::graph {

const char* node_type_name(NodeType t) {
  switch (t) {
    case NodeType::Room: return "room";
    case NodeType::Wall: return "wall";
    case NodeType::Goal: return "goal";
    case NodeType::Object: return "object";
    case NodeType::Human: return "human";
  }
  return "?";
}

const char* relation_name(RelationType r) {
  switch (r) {
    case RelationType::Self: return "self";
    case RelationType::Temporal: return "temporal";
    case RelationType::InteractsHH: return "interacts_hh";
    case RelationType::InteractsHO: return "interacts_ho";
    case RelationType::InteractsOH: return "interacts_oh";
    case RelationType::HumanRoom: return "human_room";
    case RelationType::RoomHuman: return "room_human";
    case RelationType::ObjectRoom: return "object_room";
    case RelationType::RoomObject: return "room_object";
    case RelationType::WallRoom: return "wall_room";
    case RelationType::RoomWall: return "room_wall";
    case RelationType::GoalRoom: return "goal_room";
    case RelationType::RoomGoal: return "room_goal";
  }
  return "?";
}

}  // namespace socnav::graph
