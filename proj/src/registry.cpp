#include "levelscreen/registry.hpp"

#include <algorithm>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "levelscreen/errors.hpp"
#include "levelscreen/io_util.hpp"

namespace levelscreen {

using nlohmann::json;

std::string to_string(ElementGroup group) {
  switch (group) {
    case ElementGroup::PlayerCharacter: return "player_character";
    case ElementGroup::Goal: return "goal";
    case ElementGroup::PhysicsObject: return "physics_object";
    case ElementGroup::Obstacle: return "obstacle";
  }
  return "obstacle";
}

ElementGroup element_group_from_string(const std::string& name) {
  if (name == "player_character") return ElementGroup::PlayerCharacter;
  if (name == "goal") return ElementGroup::Goal;
  if (name == "physics_object") return ElementGroup::PhysicsObject;
  if (name == "obstacle") return ElementGroup::Obstacle;
  throw SchemaError("unknown element group: " + name);
}

ElementRegistry::ElementRegistry(std::vector<ElementKind> kinds, int version)
    : kinds_(std::move(kinds)), version_(version) {
  std::unordered_set<std::string> seen;
  for (const auto& kind : kinds_) {
    if (!seen.insert(kind.id).second) {
      throw SchemaError("duplicate kind id in registry: " + kind.id);
    }
  }
}

const ElementKind* ElementRegistry::find(const std::string& id) const {
  auto it = std::find_if(kinds_.begin(), kinds_.end(),
                         [&](const ElementKind& k) { return k.id == id; });
  return it == kinds_.end() ? nullptr : &*it;
}

std::optional<std::size_t> ElementRegistry::index_of(
    const std::string& id) const {
  for (std::size_t i = 0; i < kinds_.size(); ++i) {
    if (kinds_[i].id == id) return i;
  }
  return std::nullopt;
}

std::size_t ElementRegistry::value_bearing_count() const {
  return static_cast<std::size_t>(
      std::count_if(kinds_.begin(), kinds_.end(),
                    [](const ElementKind& k) { return k.value_bearing; }));
}

std::size_t ElementRegistry::group_count(ElementGroup group) const {
  return static_cast<std::size_t>(
      std::count_if(kinds_.begin(), kinds_.end(),
                    [&](const ElementKind& k) { return k.group == group; }));
}

ElementRegistry ElementRegistry::default_registry() {
  using G = ElementGroup;
  std::vector<ElementKind> kinds = {
      {"player_character", G::PlayerCharacter, true},
      {"goal", G::Goal, false},
      {"ice_block_x1", G::PhysicsObject, false},
      {"ice_block_x10", G::PhysicsObject, false},
      {"lava_block_x1", G::PhysicsObject, false},
      {"lava_block_x10", G::PhysicsObject, false},
      {"bubble", G::PhysicsObject, false},
      {"one_way_platform", G::PhysicsObject, false},
      {"slimy_platform", G::PhysicsObject, false},
      {"sticky_platform", G::PhysicsObject, false},
      // Placeholder slots: the game names only part of its vocabulary, so
      // the registry reserves value-carrying physics slots and plain
      // obstacle slots to reach the full 25/12 layout. Placeholders are
      // versioned with the registry like any other kind.
      {"physics_ext_01", G::PhysicsObject, true},
      {"physics_ext_02", G::PhysicsObject, true},
      {"physics_ext_03", G::PhysicsObject, true},
      {"physics_ext_04", G::PhysicsObject, true},
      {"physics_ext_05", G::PhysicsObject, true},
      {"physics_ext_06", G::PhysicsObject, true},
      {"physics_ext_07", G::PhysicsObject, true},
      {"physics_ext_08", G::PhysicsObject, true},
      {"cloud", G::Obstacle, true},
      {"door", G::Obstacle, true},
      {"spiky_platform", G::Obstacle, false},
      {"breakable_wall", G::Obstacle, true},
      {"obstacle_ext_01", G::Obstacle, false},
      {"obstacle_ext_02", G::Obstacle, false},
      {"obstacle_ext_03", G::Obstacle, false},
  };
  return ElementRegistry(std::move(kinds), 1);
}

std::string ElementRegistry::to_json_string() const {
  json doc;
  doc["format"] = "levelscreen-registry";
  doc["format_version"] = 1;
  doc["version"] = version_;
  json kinds = json::array();
  for (const auto& kind : kinds_) {
    kinds.push_back({{"id", kind.id},
                     {"group", to_string(kind.group)},
                     {"value_bearing", kind.value_bearing}});
  }
  doc["kinds"] = std::move(kinds);
  return doc.dump(2) + "\n";
}

ElementRegistry ElementRegistry::from_json_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("registry: ") + e.what(), e.byte);
  }
  if (doc.value("format", "") != "levelscreen-registry") {
    throw SchemaError("not a registry file");
  }
  std::vector<ElementKind> kinds;
  for (const auto& entry : doc.at("kinds")) {
    kinds.push_back({entry.at("id").get<std::string>(),
                     element_group_from_string(entry.at("group")),
                     entry.at("value_bearing").get<bool>()});
  }
  return ElementRegistry(std::move(kinds), doc.at("version").get<int>());
}

ElementRegistry ElementRegistry::load(const std::string& path) {
  return from_json_string(read_file(path));
}

void ElementRegistry::save(const std::string& path) const {
  write_file_atomic(path, to_json_string());
}

}  // namespace levelscreen
