#include "hpack/objects.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace hpack {

GroupIndex::GroupIndex(const std::vector<ObjectSpec>& objects) : group_of(objects.size(), -1) {
  std::map<std::string, int> ids;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (!objects[i].group) continue;
    auto [it, inserted] = ids.emplace(*objects[i].group, static_cast<int>(members.size()));
    if (inserted) members.emplace_back();
    group_of[i] = it->second;
    members[it->second].push_back(static_cast<int>(i));
  }
}

void validate_objects(const std::vector<ObjectSpec>& objects) {
  std::map<std::string, const ObjectSpec*> first_of_group;
  for (const auto& o : objects) {
    if (o.options.empty()) throw Error("object '" + o.id + "' has no options");
    for (const auto& d : o.options) {
      if (d.w <= 0 || d.h <= 0) throw Error("object '" + o.id + "' has a non-positive option");
    }
    if (o.group) {
      auto [it, inserted] = first_of_group.emplace(*o.group, &o);
      if (!inserted && it->second->options != o.options) {
        throw Error("objects of group '" + *o.group + "' have different option lists");
      }
    }
  }
}

Length min_option_area(const ObjectSpec& object) {
  Length best = std::numeric_limits<Length>::max();
  for (const auto& d : object.options) best = std::min(best, d.area());
  return best;
}

Length min_option_width(const ObjectSpec& object) {
  Length best = std::numeric_limits<Length>::max();
  for (const auto& d : object.options) best = std::min(best, d.w);
  return best;
}

Length min_option_height(const ObjectSpec& object) {
  Length best = std::numeric_limits<Length>::max();
  for (const auto& d : object.options) best = std::min(best, d.h);
  return best;
}

Length widest_mandatory(const std::vector<ObjectSpec>& objects) {
  Length out = 0;
  for (const auto& o : objects) out = std::max(out, min_option_width(o));
  return out;
}

Length tallest_mandatory(const std::vector<ObjectSpec>& objects) {
  Length out = 0;
  for (const auto& o : objects) out = std::max(out, min_option_height(o));
  return out;
}

Length total_min_area(const std::vector<ObjectSpec>& objects) {
  Length out = 0;
  for (const auto& o : objects) out += min_option_area(o);
  return out;
}

std::vector<ObjectSpec> transposed(const std::vector<ObjectSpec>& objects) {
  std::vector<ObjectSpec> out = objects;
  for (auto& o : out) {
    for (auto& d : o.options) std::swap(d.w, d.h);
  }
  return out;
}

BlockLayout transposed(const BlockLayout& layout) {
  BlockLayout out = layout;
  std::swap(out.w, out.h);
  for (auto& p : out.placements) {
    std::swap(p.x, p.y);
    std::swap(p.w, p.h);
  }
  return out;
}

std::optional<std::string> layout_problem(const std::vector<ObjectSpec>& objects,
                                          const BlockLayout& layout, std::optional<Length> width_cap,
                                          std::optional<Length> height_cap) {
  std::ostringstream msg;
  if (layout.placements.size() != objects.size()) {
    msg << "layout has " << layout.placements.size() << " placements for " << objects.size() << " objects";
    return msg.str();
  }
  if (width_cap && layout.w > *width_cap) return "layout wider than the width cap";
  if (height_cap && layout.h > *height_cap) return "layout taller than the height cap";
  GroupIndex groups(objects);
  std::vector<int> group_option(groups.count(), -1);
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const Placement& p = layout.placements[i];
    const ObjectSpec& o = objects[i];
    if (p.id != o.id) return "placement " + std::to_string(i) + " is '" + p.id + "', expected '" + o.id + "'";
    if (!p.variant || *p.variant < 0 || static_cast<std::size_t>(*p.variant) >= o.options.size()) {
      return "object '" + o.id + "' has no valid option index";
    }
    if (o.options[*p.variant] != Dim{p.w, p.h}) return "object '" + o.id + "' dims differ from its option";
    if (int g = groups.group_of[i]; g >= 0) {
      if (group_option[g] >= 0 && group_option[g] != *p.variant) {
        return "group '" + *o.group + "' mixes options";
      }
      group_option[g] = *p.variant;
    }
    if (p.x < 0 || p.y < 0 || p.right() > layout.w || p.top() > layout.h) {
      return "object '" + o.id + "' lies outside the block";
    }
  }
  for (std::size_t i = 0; i < objects.size(); ++i) {
    for (std::size_t j = i + 1; j < objects.size(); ++j) {
      if (overlaps(layout.placements[i], layout.placements[j])) {
        return "objects '" + objects[i].id + "' and '" + objects[j].id + "' overlap";
      }
    }
  }
  return std::nullopt;
}

std::vector<ObjectSpec> block_objects(const Block& block,
                                      const std::map<std::string, std::vector<Dim>>& child_options) {
  std::vector<ObjectSpec> objects;
  objects.reserve(block.object_count());
  for (const auto& r : block.rects) objects.push_back({r.id, r.variants, std::nullopt});
  for (const auto& o : block.occs) {
    auto it = child_options.find(o.child);
    if (it == child_options.end() || it->second.empty()) {
      throw Error("no dimension options for child block '" + o.child + "'");
    }
    objects.push_back({o.id, it->second, o.child});
  }
  return objects;
}

BlockLayout as_block_layout(const Block& block, BlockLayout layout) {
  for (std::size_t i = block.rects.size(); i < layout.placements.size(); ++i) layout.placements[i].variant.reset();
  return layout;
}

void fit_bounding_box(BlockLayout& layout) {
  layout.w = 0;
  layout.h = 0;
  for (const auto& p : layout.placements) {
    layout.w = std::max(layout.w, p.right());
    layout.h = std::max(layout.h, p.top());
  }
}

}  // namespace hpack
