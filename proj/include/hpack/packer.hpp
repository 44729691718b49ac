#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "hpack/objects.hpp"

namespace hpack {

inline constexpr double kUnlimited = std::numeric_limits<double>::infinity();

struct PackObjective {
  enum class Mode { kMinHeight, kMinWidth, kMinHalfPerimeter };
  Mode mode = Mode::kMinHalfPerimeter;
  // Width cap for kMinHeight, height cap for kMinWidth, unused otherwise.
  Length cap = 0;

  static PackObjective min_height(Length width_cap) { return {Mode::kMinHeight, width_cap}; }
  static PackObjective min_width(Length height_cap) { return {Mode::kMinWidth, height_cap}; }
  static PackObjective min_half_perimeter() { return {Mode::kMinHalfPerimeter, 0}; }
};

struct PackTask {
  std::vector<ObjectSpec> objects;
  PackObjective objective;
  std::optional<BlockLayout> warm_start;
  double budget = kUnlimited;              // seconds
  double improvement_period = kUnlimited;  // seconds without improvement before aborting
  // Called with every new incumbent, the starting one included.
  std::function<void(const BlockLayout&)> on_incumbent;
  // Area estimate for the heuristic seed; total smallest-option area if absent.
  std::optional<Length> bounds_area;
};

enum class PackStatus { kOptimal, kBudget, kImprovementStall, kInfeasible };

const char* to_string(PackStatus status);

struct PackResult {
  std::optional<BlockLayout> best;
  bool proven_optimal = false;
  PackStatus reason = PackStatus::kInfeasible;
  std::uint64_t nodes = 0;
  double elapsed = 0.0;
};

// Exact anytime single-block solver. Without a warm start the heuristic
// portfolio provides the first incumbent.
PackResult solve(const PackTask& task);

// One-dimensional cumulative relaxation of a strip of the given width:
// max(ceil(total smallest fitting area / width), tallest object). Returns
// the maximum Length when some object fits the width in none of its options.
Length cumulative_lb(const std::vector<ObjectSpec>& objects, Length width);

}  // namespace hpack
