#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hpack/json_io.hpp"
#include "hpack/model.hpp"

namespace hpack {

struct GenConfig {
  int levels = 1;
  std::pair<int, int> rect_count_range{5, 80};
  int max_variants = 5;
  std::pair<double, double> area_range{100.0, 2500.0};  // rectangle areas in the top block
  std::pair<double, double> area_multiplier_range{0.5, 1.0};
  std::pair<double, double> aspect_range{1.0, 4.0};     // long side / short side
  bool multi_occurrence = false;
  std::uint64_t seed = 0;
};

// Throws Error on an invalid configuration.
void validate_gen_config(const GenConfig& config);

// Largest rectangle count per block for an instance with `levels` levels:
// 80 for one level down to 40 for seven.
int rect_count_cap(int levels);

// Random out-tree instance whose longest top-to-leaf path has exactly
// config.levels blocks. Deterministic in the seed.
Instance generate(const GenConfig& config);

struct Preset {
  std::string name;
  GenConfig config;
  double minutes = 0.0;  // time limit per instance in the reference experiments
};

// L1-NV, L1, L2-L, L2-I, L2-S, L3, L3-M, L4, L4-M, L5, L6, L7.
const std::vector<Preset>& presets();
std::optional<Preset> find_preset(const std::string& name);

GenConfig gen_config_from_json(const Json& json);
Json gen_config_to_json(const GenConfig& config);

}  // namespace hpack
