#pragma once

#include <map>
#include <string>
#include <vector>

#include "hpack/model.hpp"
#include "hpack/packer.hpp"

namespace hpack {

enum class BUSolver { kPacker, kHeuristics };

struct BUConfig {
  int variants = 3;           // N
  double total_time = 60.0;   // T, seconds
  BUSolver solver = BUSolver::kPacker;
  double improvement_period = kUnlimited;
};

// tau(B) = objects(B) / objects(all blocks) * T.
std::map<std::string, double> allocate_time(const Instance& instance, double total_time);

// Up to n width caps between w_min and w_max, log-uniformly spaced in aspect
// ratio (hence geometrically in width). Duplicates are dropped.
std::vector<Length> gen_width_caps(Length area_lb, Length w_min, Length w_max, int n);

// Packs each non-top block into one strip per width cap, leaves first; the
// resulting layouts become the options of that block's occurrences in its
// parent. The top block is packed for minimum half-perimeter.
Solution run_bottom_up(const Instance& instance, const BUConfig& config);

}  // namespace hpack
