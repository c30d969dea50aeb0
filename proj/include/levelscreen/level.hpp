#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levelscreen/registry.hpp"

namespace levelscreen {

enum class Author { Expert, Player };
enum class Label { Selected, Excluded };

std::string to_string(Author author);
std::string to_string(Label label);

struct GridPos {
  int row = 0;
  int col = 0;
  bool operator==(const GridPos&) const = default;
};

struct LevelElement {
  std::string kind;
  std::optional<int> value;
  std::optional<GridPos> position;
  bool operator==(const LevelElement&) const = default;
};

struct GameLevel {
  std::string level_id;
  Author author = Author::Player;
  std::vector<LevelElement> elements;
  std::optional<Label> label;
  // Set by the parser when the file contained kinds absent from the
  // registry; those elements are kept with group Obstacle.
  std::vector<std::string> unknown_kinds;

  std::size_t count_of(const std::string& kind) const;
};

struct Violation {
  std::string invariant;   // e.g. "goal-count"
  std::string detail;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Parses one level from its file bytes. Unknown kinds are preserved and
// recorded in unknown_kinds; a value on a known non-value-bearing kind is a
// SchemaError, malformed text is a ParseError carrying the byte offset.
GameLevel parse_level(const std::string& bytes, const ElementRegistry& registry);

std::string serialize_level(const GameLevel& level);

ValidationResult validate_level(const GameLevel& level,
                                const ElementRegistry& registry);

// Corpus files: one header line, then one serialized level per line.
struct Corpus {
  std::vector<GameLevel> levels;
  int registry_version = 0;
  bool labeled = false;
};

Corpus load_corpus(const std::string& path, const ElementRegistry& registry);
void save_corpus(const Corpus& corpus, const std::string& path);
std::string corpus_to_string(const Corpus& corpus);

// Labeled-corpus check: every player level must carry a label.
ValidationResult validate_corpus(const Corpus& corpus,
                                 const ElementRegistry& registry);

}  // namespace levelscreen
