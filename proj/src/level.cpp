#include "levelscreen/level.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "levelscreen/errors.hpp"
#include "levelscreen/io_util.hpp"

namespace levelscreen {

using nlohmann::json;

std::string to_string(Author author) {
  return author == Author::Expert ? "expert" : "player";
}

std::string to_string(Label label) {
  return label == Label::Selected ? "selected" : "excluded";
}

namespace {

Author author_from_string(const std::string& name) {
  if (name == "expert") return Author::Expert;
  if (name == "player") return Author::Player;
  throw SchemaError("unknown author: " + name);
}

Label label_from_string(const std::string& name) {
  if (name == "selected") return Label::Selected;
  if (name == "excluded") return Label::Excluded;
  throw SchemaError("unknown label: " + name);
}

GameLevel level_from_json(const json& doc, const ElementRegistry& registry) {
  GameLevel level;
  level.level_id = doc.at("level_id").get<std::string>();
  level.author = author_from_string(doc.at("author").get<std::string>());
  if (doc.contains("label") && !doc.at("label").is_null()) {
    level.label = label_from_string(doc.at("label").get<std::string>());
  }
  for (const auto& el : doc.at("elements")) {
    LevelElement element;
    element.kind = el.at("kind").get<std::string>();
    if (el.contains("value") && !el.at("value").is_null()) {
      element.value = el.at("value").get<int>();
    }
    if (el.contains("row") && el.contains("col")) {
      element.position = GridPos{el.at("row").get<int>(),
                                 el.at("col").get<int>()};
    }
    const ElementKind* kind = registry.find(element.kind);
    if (kind == nullptr) {
      if (std::find(level.unknown_kinds.begin(), level.unknown_kinds.end(),
                    element.kind) == level.unknown_kinds.end()) {
        level.unknown_kinds.push_back(element.kind);
      }
    } else if (element.value.has_value() && !kind->value_bearing) {
      throw SchemaError("kind '" + element.kind +
                        "' is not value-bearing but carries a value");
    }
    level.elements.push_back(std::move(element));
  }
  return level;
}

json level_to_json(const GameLevel& level) {
  json doc;
  doc["level_id"] = level.level_id;
  doc["author"] = to_string(level.author);
  if (level.label.has_value()) doc["label"] = to_string(*level.label);
  json elements = json::array();
  for (const auto& element : level.elements) {
    json el;
    el["kind"] = element.kind;
    if (element.value.has_value()) el["value"] = *element.value;
    if (element.position.has_value()) {
      el["row"] = element.position->row;
      el["col"] = element.position->col;
    }
    elements.push_back(std::move(el));
  }
  doc["elements"] = std::move(elements);
  return doc;
}

}  // namespace

std::size_t GameLevel::count_of(const std::string& kind) const {
  return static_cast<std::size_t>(
      std::count_if(elements.begin(), elements.end(),
                    [&](const LevelElement& e) { return e.kind == kind; }));
}

GameLevel parse_level(const std::string& bytes,
                      const ElementRegistry& registry) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("level: ") + e.what(), e.byte);
  }
  try {
    return level_from_json(doc, registry);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("level: ") + e.what());
  }
}

std::string serialize_level(const GameLevel& level) {
  return level_to_json(level).dump();
}

ValidationResult validate_level(const GameLevel& level,
                                const ElementRegistry& registry) {
  ValidationResult result;
  std::size_t goals = 0;
  std::size_t characters = 0;
  for (const auto& element : level.elements) {
    const ElementKind* kind = registry.find(element.kind);
    if (kind == nullptr) continue;
    if (kind->group == ElementGroup::Goal) ++goals;
    if (kind->group == ElementGroup::PlayerCharacter) ++characters;
    if (element.value.has_value() && !kind->value_bearing) {
      result.violations.push_back(
          {"value-on-non-value-bearing",
           level.level_id + ": kind '" + element.kind + "' carries a value"});
    }
  }
  if (goals != 1) {
    result.violations.push_back(
        {"goal-count", level.level_id + ": expected exactly 1 goal, found " +
                           std::to_string(goals)});
  }
  if (characters < 1) {
    result.violations.push_back(
        {"player-character-count",
         level.level_id + ": expected at least 1 player character"});
  }
  return result;
}

Corpus load_corpus(const std::string& path, const ElementRegistry& registry) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty corpus file", 0);

  Corpus corpus;
  json header;
  try {
    header = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("corpus header: ") + e.what(), e.byte);
  }
  if (header.value("format", "") != "levelscreen-corpus") {
    throw SchemaError("not a corpus file: " + path);
  }
  corpus.registry_version = header.at("registry_version").get<int>();
  corpus.labeled = header.value("labeled", false);
  if (corpus.registry_version != registry.version()) {
    throw VersionError("corpus registry_version " +
                       std::to_string(corpus.registry_version) +
                       " does not match registry version " +
                       std::to_string(registry.version()));
  }

  std::size_t offset = line.size() + 1;
  while (std::getline(in, line)) {
    if (!line.empty()) {
      try {
        corpus.levels.push_back(parse_level(line, registry));
      } catch (const ParseError& e) {
        throw ParseError("corpus line: " + std::string(e.what()),
                         offset + e.byte_offset());
      }
    }
    offset += line.size() + 1;
  }
  return corpus;
}

std::string corpus_to_string(const Corpus& corpus) {
  json header;
  header["format"] = "levelscreen-corpus";
  header["format_version"] = 1;
  header["registry_version"] = corpus.registry_version;
  header["labeled"] = corpus.labeled;
  std::string out = header.dump() + "\n";
  for (const auto& level : corpus.levels) {
    out += serialize_level(level);
    out += "\n";
  }
  return out;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
  write_file_atomic(path, corpus_to_string(corpus));
}

ValidationResult validate_corpus(const Corpus& corpus,
                                 const ElementRegistry& registry) {
  ValidationResult result;
  for (const auto& level : corpus.levels) {
    ValidationResult r = validate_level(level, registry);
    result.violations.insert(result.violations.end(), r.violations.begin(),
                             r.violations.end());
    if (corpus.labeled && level.author == Author::Player &&
        !level.label.has_value()) {
      result.violations.push_back(
          {"missing-label",
           level.level_id + ": player level in labeled corpus has no label"});
    }
  }
  return result;
}

}  // namespace levelscreen
