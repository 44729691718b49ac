#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpack {

// Coordinates and dimensions. The generator keeps every single dimension
// below 2^31, so sums and products of two dimensions fit.
using Length = std::int64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Dim {
  Length w = 0;
  Length h = 0;

  Length area() const { return w * h; }
  Length half_perimeter() const { return w + h; }
  friend bool operator==(const Dim&, const Dim&) = default;
  friend auto operator<=>(const Dim&, const Dim&) = default;
};

using RectVariant = Dim;

struct Rectangle {
  std::string id;
  std::vector<RectVariant> variants;
};

struct BlockOccurrence {
  std::string id;
  std::string child;
};

struct Block {
  std::string id;
  std::vector<Rectangle> rects;
  std::vector<BlockOccurrence> occs;

  std::size_t object_count() const { return rects.size() + occs.size(); }
};

struct Instance {
  std::map<std::string, Block> blocks;
  std::string top;

  const Block& block(const std::string& id) const;
};

struct Placement {
  std::string id;
  Length x = 0;
  Length y = 0;
  Length w = 0;
  Length h = 0;
  // Rectangles: index into the variant list. In single-block layouts produced
  // by the heuristics and the packer this is the chosen option index of any
  // object, occurrences included.
  std::optional<int> variant;

  Length right() const { return x + w; }
  Length top() const { return y + h; }
};

struct BlockLayout {
  Length w = 0;
  Length h = 0;
  std::vector<Placement> placements;

  Dim dim() const { return {w, h}; }
};

struct Solution {
  std::map<std::string, BlockLayout> layouts;
};

enum class ViolationKind {
  kMissingTop,
  kUnknownChild,
  kSelfReference,
  kCycle,
  kMultipleParents,
  kUnreachable,
  kTopReferenced,
  kEmptyVariants,
  kNonPositiveDim,
  kDuplicateId,
  kMissingLayout,
  kMissingPlacement,
  kDuplicatePlacement,
  kUnknownPlacement,
  kContainment,
  kOverlap,
  kVariantMismatch,
  kOccurrenceDimMismatch,
  kBlockDim,
};

struct Violation {
  ViolationKind kind;
  std::string block;
  std::string message;
};

const char* to_string(ViolationKind kind);

// Structural checks of the block hierarchy: it must be an out-tree rooted at
// the top block with well-formed rectangles.
std::vector<Violation> validate_instance(const Instance& instance);

// Checks every layout of the subtree rooted at `root` (the top block when
// empty) against containment, non-overlap, variant and occurrence dimensions.
std::vector<Violation> check_feasible(const Instance& instance, const Solution& solution,
                                      const std::string& root = {});

struct Objective {
  Length half_perimeter = 0;
  Length area = 0;
};

// Throws Error when the layout of `top` is missing.
Objective objective(const Solution& solution, const std::string& top);

// Blocks ordered parent-before-child (breadth-first from the top block).
// Requires a valid instance.
std::vector<std::string> topological_order(const Instance& instance);

// Blocks of the subtree rooted at `root`, parent-before-child.
std::vector<std::string> subtree_blocks(const Instance& instance, const std::string& root);

// Distinct children of a block in order of first occurrence, with multiplicity.
std::vector<std::pair<std::string, int>> children_of(const Block& block);

// Depth of every block, the top block having depth 1.
std::map<std::string, int> block_depths(const Instance& instance);

bool overlaps(const Placement& a, const Placement& b);

}  // namespace hpack
