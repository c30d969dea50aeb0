#pragma once

#include <optional>
#include <string>
#include <vector>

namespace levelscreen {

enum class ElementGroup { PlayerCharacter, Goal, PhysicsObject, Obstacle };

std::string to_string(ElementGroup group);
ElementGroup element_group_from_string(const std::string& name);

struct ElementKind {
  std::string id;
  ElementGroup group = ElementGroup::Obstacle;
  bool value_bearing = false;
};

// Ordered, versioned element vocabulary. Feature-column order is derived
// from the kind order, so the order is part of the registry contract.
class ElementRegistry {
 public:
  ElementRegistry(std::vector<ElementKind> kinds, int version);

  const std::vector<ElementKind>& kinds() const { return kinds_; }
  int version() const { return version_; }

  const ElementKind* find(const std::string& id) const;
  std::optional<std::size_t> index_of(const std::string& id) const;

  std::size_t value_bearing_count() const;
  std::size_t group_count(ElementGroup group) const;

  // The 25-kind vocabulary used throughout: the kinds named in the game's
  // element table plus versioned placeholder slots for the unnamed ones.
  static ElementRegistry default_registry();

  static ElementRegistry load(const std::string& path);
  void save(const std::string& path) const;

  std::string to_json_string() const;
  static ElementRegistry from_json_string(const std::string& text);

 private:
  std::vector<ElementKind> kinds_;
  int version_;
};

}  // namespace levelscreen
