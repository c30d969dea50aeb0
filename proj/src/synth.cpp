#include "levelscreen/synth.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "levelscreen/errors.hpp"
#include "levelscreen/rng.hpp"

namespace levelscreen {

using nlohmann::json;

PlantedRule PlantedRule::default_rule() {
  PlantedRule rule;
  rule.weights = {{"player_character.count", 1.0},
                  {"one_way_platform.count", 0.811},
                  {"bubble.count", 0.589}};
  // Goal presence is part of the rule as a hard constraint: a level without
  // exactly one goal is impossible, so the count column stays constant.
  rule.constraints["goal"] = {1, 1};
  rule.constraints["player_character"] = {1, 4};
  return rule;
}

namespace {

struct KindProfile {
  double presence = 0.25;
  int min_count = 1;
  int max_count = 3;
};

KindProfile profile_for(const ElementKind& kind) {
  if (kind.group == ElementGroup::Goal) return {1.0, 1, 1};
  if (kind.group == ElementGroup::PlayerCharacter) return {1.0, 1, 4};
  if (kind.id == "one_way_platform" || kind.id == "bubble") {
    return {0.55, 1, 4};
  }
  if (kind.id.rfind("physics_ext_", 0) == 0) return {0.15, 1, 2};
  if (kind.id.rfind("obstacle_ext_", 0) == 0) return {0.12, 1, 2};
  if (kind.group == ElementGroup::PhysicsObject) return {0.40, 1, 5};
  return {0.35, 1, 3};
}

int sample_count(Rng& rng, const KindProfile& profile,
                 const CountRange& bounds) {
  int count = 0;
  if (rng.uniform_real() < profile.presence) {
    count = rng.uniform_int(profile.min_count, profile.max_count);
  }
  return std::clamp(count, bounds.min_count, bounds.max_count);
}

void validate_config(const SynthConfig& config, const FeatureSchema& schema,
                     const ElementRegistry& registry) {
  if (config.n_levels <= 0) throw ConfigError("n_levels must be positive");
  if (config.positive_rate_target <= 0.0 ||
      config.positive_rate_target >= 1.0) {
    throw ConfigError("positive_rate_target must lie in (0,1)");
  }
  if (config.label_noise < 0.0 || config.label_noise >= 0.5) {
    throw ConfigError("label_noise must lie in [0, 0.5)");
  }
  for (const auto& [column, weight] : config.rule.weights) {
    (void)weight;
    if (!schema.column_index(column).has_value()) {
      throw ConfigError("rule weight references unknown column: " + column);
    }
  }
  for (const auto& [kind, bounds] : config.rule.constraints) {
    const ElementKind* k = registry.find(kind);
    if (k == nullptr) {
      throw GenerationError("constraint references unknown kind: " + kind);
    }
    if (bounds.min_count > bounds.max_count) {
      throw GenerationError("unsatisfiable constraint on kind '" + kind +
                            "': min " + std::to_string(bounds.min_count) +
                            " > max " + std::to_string(bounds.max_count));
    }
    if (k->group == ElementGroup::Goal &&
        (bounds.min_count > 1 || bounds.max_count < 1)) {
      throw GenerationError(
          "constraint on goal kind excludes the single-goal invariant");
    }
    if (k->group == ElementGroup::PlayerCharacter && bounds.max_count < 1) {
      throw GenerationError(
          "constraint on player character excludes required minimum of 1");
    }
  }
}

bool satisfies_constraints(const GameLevel& level, const PlantedRule& rule) {
  for (const auto& [kind, bounds] : rule.constraints) {
    int count = static_cast<int>(level.count_of(kind));
    if (count < bounds.min_count || count > bounds.max_count) return false;
  }
  return true;
}

GameLevel sample_level(std::uint64_t seed, std::uint64_t index,
                       const ElementRegistry& registry,
                       const PlantedRule& rule) {
  constexpr int kRetryBudget = 200;
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    Rng rng(derive_seed(seed, 2 * index + 1000003ULL * attempt));
    GameLevel level;
    char id[24];
    std::snprintf(id, sizeof(id), "synth-%06llu",
                  static_cast<unsigned long long>(index));
    level.level_id = id;
    level.author = Author::Player;

    for (const auto& kind : registry.kinds()) {
      KindProfile profile = profile_for(kind);
      CountRange bounds;
      if (kind.group == ElementGroup::Goal) bounds = {1, 1};
      if (kind.group == ElementGroup::PlayerCharacter) bounds.min_count = 1;
      auto it = rule.constraints.find(kind.id);
      if (it != rule.constraints.end()) {
        bounds.min_count = std::max(bounds.min_count, it->second.min_count);
        bounds.max_count = std::min(bounds.max_count, it->second.max_count);
      }
      int count = sample_count(rng, profile, bounds);
      for (int e = 0; e < count; ++e) {
        LevelElement element;
        element.kind = kind.id;
        if (kind.value_bearing) element.value = rng.uniform_int(1, 9);
        element.position = GridPos{rng.uniform_int(0, 11),
                                   rng.uniform_int(0, 15)};
        level.elements.push_back(std::move(element));
      }
    }
    rng.shuffle(level.elements);
    if (satisfies_constraints(level, rule)) return level;
  }
  throw GenerationError("retry budget exhausted while sampling level " +
                        std::to_string(index) +
                        "; constraints appear unsatisfiable");
}

}  // namespace

SynthResult generate_corpus(const SynthConfig& config,
                            const FeatureSchema& schema,
                            const ElementRegistry& registry) {
  validate_config(config, schema, registry);

  std::vector<std::pair<Index, double>> weight_columns;
  for (const auto& [column, weight] : config.rule.weights) {
    weight_columns.emplace_back(*schema.column_index(column), weight);
  }

  SynthResult result;
  result.corpus.registry_version = registry.version();
  result.corpus.labeled = true;

  std::vector<double> scores(static_cast<std::size_t>(config.n_levels));
  for (int i = 0; i < config.n_levels; ++i) {
    GameLevel level = sample_level(config.seed,
                                   static_cast<std::uint64_t>(i), registry,
                                   config.rule);
    FeatureVector fv = extract_features(level, schema, registry);
    double score = 0.0;
    for (const auto& [col, weight] : weight_columns) {
      if (!fv.missing(col)) score += weight * fv.values(col);
    }
    scores[static_cast<std::size_t>(i)] = score;
    result.corpus.levels.push_back(std::move(level));
  }

  if (config.rule.threshold.has_value()) {
    result.threshold = *config.rule.threshold;
  } else {
    // Calibrate: the k highest scores land above the threshold (fewer when
    // scores tie at the boundary).
    int k = static_cast<int>(std::lround(config.n_levels *
                                         config.positive_rate_target));
    k = std::clamp(k, 1, config.n_levels - 1);
    std::vector<double> sorted = scores;
    std::sort(sorted.begin(), sorted.end());
    result.threshold = sorted[static_cast<std::size_t>(config.n_levels - k - 1)];
  }

  for (int i = 0; i < config.n_levels; ++i) {
    bool selected = scores[static_cast<std::size_t>(i)] > result.threshold;
    if (config.label_noise > 0.0) {
      Rng noise_rng(derive_seed(config.seed, 2 * static_cast<std::uint64_t>(i) + 1));
      if (noise_rng.uniform_real() < config.label_noise) selected = !selected;
    }
    result.corpus.levels[static_cast<std::size_t>(i)].label =
        selected ? Label::Selected : Label::Excluded;
    if (selected) ++result.positives;
  }

  json manifest;
  manifest["format"] = "levelscreen-synth-manifest";
  manifest["format_version"] = 1;
  manifest["seed"] = config.seed;
  manifest["n_levels"] = config.n_levels;
  manifest["positive_rate_target"] = config.positive_rate_target;
  manifest["label_noise"] = config.label_noise;
  manifest["registry_version"] = registry.version();
  manifest["threshold"] = result.threshold;
  manifest["positives"] = result.positives;
  json weights = json::object();
  for (const auto& [column, weight] : config.rule.weights) {
    weights[column] = weight;
  }
  manifest["weights"] = std::move(weights);
  json constraints = json::object();
  for (const auto& [kind, bounds] : config.rule.constraints) {
    constraints[kind] = {{"min", bounds.min_count}, {"max", bounds.max_count}};
  }
  manifest["constraints"] = std::move(constraints);
  result.manifest_json = manifest.dump(2) + "\n";

  return result;
}

}  // namespace levelscreen
