#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "levelscreen/features.hpp"
#include "levelscreen/level.hpp"

namespace levelscreen {

struct CountRange {
  int min_count = 0;
  int max_count = 1 << 20;
};

// Ground-truth selection function planted into synthetic corpora: a weighted
// linear score over feature columns with a threshold, plus hard per-kind
// count constraints enforced at generation time.
struct PlantedRule {
  std::vector<std::pair<std::string, double>> weights;
  // Absent threshold means: calibrate to the configured positive rate.
  std::optional<double> threshold;
  std::map<std::string, CountRange> constraints;

  static PlantedRule default_rule();
};

struct SynthConfig {
  int n_levels = 120;
  double positive_rate_target = 44.0 / 120.0;
  PlantedRule rule = PlantedRule::default_rule();
  double label_noise = 0.0;
  std::uint64_t seed = 0;
};

struct SynthResult {
  Corpus corpus;
  double threshold = 0.0;  // calibrated value actually used for labels
  int positives = 0;       // positive labels after noise
  std::string manifest_json;
};

// Deterministic in (config, seed): each level draws from its own substream,
// so the output is identical regardless of generation order.
SynthResult generate_corpus(const SynthConfig& config,
                            const FeatureSchema& schema,
                            const ElementRegistry& registry);

}  // namespace levelscreen
