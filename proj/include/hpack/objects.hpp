#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hpack/model.hpp"

namespace hpack {

// One packable object of a single-block problem. Occurrences of the same
// child block carry the same group key and must all pick the same option.
struct ObjectSpec {
  std::string id;
  std::vector<Dim> options;
  std::optional<std::string> group;
};

// Dense group numbering of an object list: group_of[i] is -1 for ungrouped
// objects, otherwise an index into members.
struct GroupIndex {
  std::vector<int> group_of;
  std::vector<std::vector<int>> members;

  explicit GroupIndex(const std::vector<ObjectSpec>& objects);
  int count() const { return static_cast<int>(members.size()); }
};

// Throws Error on empty option lists, non-positive dims, or groups whose
// members disagree on their option lists.
void validate_objects(const std::vector<ObjectSpec>& objects);

Length min_option_area(const ObjectSpec& object);
Length min_option_width(const ObjectSpec& object);
Length min_option_height(const ObjectSpec& object);

// Max over objects of the narrowest option width; no layout can be narrower.
Length widest_mandatory(const std::vector<ObjectSpec>& objects);
Length tallest_mandatory(const std::vector<ObjectSpec>& objects);
Length total_min_area(const std::vector<ObjectSpec>& objects);

// Swaps width and height of every option.
std::vector<ObjectSpec> transposed(const std::vector<ObjectSpec>& objects);
BlockLayout transposed(const BlockLayout& layout);

// Checks a single-block layout: one placement per object in object order,
// option indices in range with matching dims, group consistency,
// containment, non-overlap and the optional caps. Returns a description of the
// first problem, or nothing when the layout is valid.
std::optional<std::string> layout_problem(const std::vector<ObjectSpec>& objects,
                                          const BlockLayout& layout,
                                          std::optional<Length> width_cap = std::nullopt,
                                          std::optional<Length> height_cap = std::nullopt);

// Object view of a block: its rectangles with their variants as options,
// then its occurrences, grouped by child block, with that child's options.
std::vector<ObjectSpec> block_objects(const Block& block,
                                      const std::map<std::string, std::vector<Dim>>& child_options);

// Turns a single-block layout of block_objects(block, ...) into a layout of
// the block: occurrence placements lose their option index.
BlockLayout as_block_layout(const Block& block, BlockLayout layout);

// Shrinks W and H to the extent of the placements.
void fit_bounding_box(BlockLayout& layout);

}  // namespace hpack
