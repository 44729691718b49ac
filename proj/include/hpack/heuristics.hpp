#pragma once

#include <optional>
#include <vector>

#include "hpack/objects.hpp"

namespace hpack {

// Places objects one by one in non-increasing order of their smallest option
// area (ties: larger side first, then id), each at the lowest, then leftmost
// position that is free, trying every allowed option there. Without a cap the
// strip is unbounded to the right. Throws Error when some object fits the cap
// in none of its options.
BlockLayout bottom_left(const std::vector<ObjectSpec>& objects,
                        std::optional<Length> width_cap = std::nullopt);

// Same placement rule, but objects are taken in the given order.
BlockLayout bottom_left_ordered(const std::vector<ObjectSpec>& objects, const std::vector<int>& order,
                                std::optional<Length> width_cap = std::nullopt);

enum class FitPolicy { kLeftmost, kTallestNeighbor, kSmallestNeighbor };

// Skyline best-fit: fill the lowest gap with the widest object option that
// fits it, positioned per policy; a gap nothing fits is raised to its lower
// neighbor. Throws Error on an infeasible cap.
BlockLayout best_fit(const std::vector<ObjectSpec>& objects, Length width_cap, FitPolicy policy);

// Runs bottom_left and best_fit under all three policies. Without a cap the
// best-fit strip width is ceil(sqrt(bounds_area)), raised to the widest
// mandatory object. Returns the member minimizing H (under a cap, ties on W)
// or W+H (ties on area).
BlockLayout heuristic_portfolio(const std::vector<ObjectSpec>& objects, std::optional<Length> width_cap,
                                Length bounds_area);

// True when `a` is strictly better than `b` under the active objective.
bool better_layout(const BlockLayout& a, const BlockLayout& b, bool capped);

}  // namespace hpack
