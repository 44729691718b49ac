#include "hpack/model.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_map>

namespace hpack {

const Block& Instance::block(const std::string& id) const {
  auto it = blocks.find(id);
  if (it == blocks.end()) throw Error("unknown block '" + id + "'");
  return it->second;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kMissingTop: return "missing_top";
    case ViolationKind::kUnknownChild: return "unknown_child";
    case ViolationKind::kSelfReference: return "self_reference";
    case ViolationKind::kCycle: return "cycle";
    case ViolationKind::kMultipleParents: return "multiple_parents";
    case ViolationKind::kUnreachable: return "unreachable";
    case ViolationKind::kTopReferenced: return "top_referenced";
    case ViolationKind::kEmptyVariants: return "empty_variants";
    case ViolationKind::kNonPositiveDim: return "non_positive_dim";
    case ViolationKind::kDuplicateId: return "duplicate_id";
    case ViolationKind::kMissingLayout: return "missing_layout";
    case ViolationKind::kMissingPlacement: return "missing_placement";
    case ViolationKind::kDuplicatePlacement: return "duplicate_placement";
    case ViolationKind::kUnknownPlacement: return "unknown_placement";
    case ViolationKind::kContainment: return "containment";
    case ViolationKind::kOverlap: return "overlap";
    case ViolationKind::kVariantMismatch: return "variant_mismatch";
    case ViolationKind::kOccurrenceDimMismatch: return "occurrence_dim_mismatch";
    case ViolationKind::kBlockDim: return "block_dim";
  }
  return "unknown";
}

namespace {

void add(std::vector<Violation>& out, ViolationKind kind, const std::string& block,
         const std::string& message) {
  out.push_back(Violation{kind, block, message});
}

// Colors for the iterative cycle search.
enum class Mark { kWhite, kGrey, kBlack };

}  // namespace

std::vector<Violation> validate_instance(const Instance& instance) {
  std::vector<Violation> out;
  if (instance.blocks.find(instance.top) == instance.blocks.end()) {
    add(out, ViolationKind::kMissingTop, instance.top, "top block '" + instance.top + "' does not exist");
  }

  std::map<std::string, std::set<std::string>> parents;
  for (const auto& [id, block] : instance.blocks) {
    if (block.id != id) {
      add(out, ViolationKind::kDuplicateId, id, "block key '" + id + "' differs from block id '" + block.id + "'");
    }
    std::set<std::string> seen;
    for (const auto& rect : block.rects) {
      if (!seen.insert(rect.id).second) {
        add(out, ViolationKind::kDuplicateId, id, "object id '" + rect.id + "' used twice");
      }
      if (rect.variants.empty()) {
        add(out, ViolationKind::kEmptyVariants, id, "rectangle '" + rect.id + "' has no variants");
      }
      for (const auto& v : rect.variants) {
        if (v.w <= 0 || v.h <= 0) {
          std::ostringstream msg;
          msg << "rectangle '" << rect.id << "' has variant " << v.w << "x" << v.h;
          add(out, ViolationKind::kNonPositiveDim, id, msg.str());
        }
      }
    }
    for (const auto& occ : block.occs) {
      if (!seen.insert(occ.id).second) {
        add(out, ViolationKind::kDuplicateId, id, "object id '" + occ.id + "' used twice");
      }
      if (occ.child == id) {
        add(out, ViolationKind::kSelfReference, id, "occurrence '" + occ.id + "' references its own block");
        continue;
      }
      if (instance.blocks.find(occ.child) == instance.blocks.end()) {
        add(out, ViolationKind::kUnknownChild, id, "occurrence '" + occ.id + "' references unknown block '" + occ.child + "'");
        continue;
      }
      parents[occ.child].insert(id);
    }
  }

  for (const auto& [child, ps] : parents) {
    if (child == instance.top) {
      add(out, ViolationKind::kTopReferenced, child, "top block is referenced by another block");
    }
    if (ps.size() > 1) {
      std::string names;
      for (const auto& p : ps) names += (names.empty() ? "" : ", ") + p;
      add(out, ViolationKind::kMultipleParents, child, "block has several parents: " + names);
    }
  }

  // Cycle detection over known child edges.
  std::map<std::string, Mark> mark;
  for (const auto& [id, _] : instance.blocks) mark[id] = Mark::kWhite;
  std::set<std::string> reported;
  for (const auto& [start, _] : instance.blocks) {
    if (mark[start] != Mark::kWhite) continue;
    // Stack of (block, next occurrence index).
    std::vector<std::pair<std::string, std::size_t>> stack{{start, 0}};
    mark[start] = Mark::kGrey;
    while (!stack.empty()) {
      auto& [cur, idx] = stack.back();
      const Block& block = instance.blocks.at(cur);
      if (idx >= block.occs.size()) {
        mark[cur] = Mark::kBlack;
        stack.pop_back();
        continue;
      }
      const std::string child = block.occs[idx++].child;
      auto it = mark.find(child);
      if (it == mark.end() || child == cur) continue;
      if (it->second == Mark::kGrey) {
        if (reported.insert(child).second) {
          add(out, ViolationKind::kCycle, child, "cycle through block '" + child + "' and '" + cur + "'");
        }
      } else if (it->second == Mark::kWhite) {
        it->second = Mark::kGrey;
        stack.emplace_back(child, 0);
      }
    }
  }

  if (instance.blocks.count(instance.top)) {
    std::set<std::string> reached{instance.top};
    std::deque<std::string> queue{instance.top};
    while (!queue.empty()) {
      const Block& block = instance.blocks.at(queue.front());
      queue.pop_front();
      for (const auto& occ : block.occs) {
        if (instance.blocks.count(occ.child) && reached.insert(occ.child).second) queue.push_back(occ.child);
      }
    }
    for (const auto& [id, _] : instance.blocks) {
      if (!reached.count(id)) add(out, ViolationKind::kUnreachable, id, "block is not reachable from the top block");
    }
  }
  return out;
}

bool overlaps(const Placement& a, const Placement& b) {
  return !(a.right() <= b.x || b.right() <= a.x || a.top() <= b.y || b.top() <= a.y);
}

std::vector<Violation> check_feasible(const Instance& instance, const Solution& solution,
                                      const std::string& root) {
  std::vector<Violation> out;
  const std::string start = root.empty() ? instance.top : root;
  for (const auto& id : subtree_blocks(instance, start)) {
    const Block& block = instance.block(id);
    auto lit = solution.layouts.find(id);
    if (lit == solution.layouts.end()) {
      add(out, ViolationKind::kMissingLayout, id, "no layout for block");
      continue;
    }
    const BlockLayout& layout = lit->second;
    if (layout.w <= 0 || layout.h <= 0) {
      std::ostringstream msg;
      msg << "block dimensions " << layout.w << "x" << layout.h << " are not positive";
      add(out, ViolationKind::kBlockDim, id, msg.str());
    }

    std::unordered_map<std::string, const Rectangle*> rects;
    std::unordered_map<std::string, const BlockOccurrence*> occs;
    for (const auto& r : block.rects) rects.emplace(r.id, &r);
    for (const auto& o : block.occs) occs.emplace(o.id, &o);

    std::set<std::string> placed;
    for (const auto& p : layout.placements) {
      if (!placed.insert(p.id).second) {
        add(out, ViolationKind::kDuplicatePlacement, id, "object '" + p.id + "' placed more than once");
        continue;
      }
      if (auto r = rects.find(p.id); r != rects.end()) {
        const auto& variants = r->second->variants;
        if (!p.variant || *p.variant < 0 || static_cast<std::size_t>(*p.variant) >= variants.size()) {
          add(out, ViolationKind::kVariantMismatch, id, "rectangle '" + p.id + "' has no valid variant index");
        } else if (variants[*p.variant] != Dim{p.w, p.h}) {
          std::ostringstream msg;
          msg << "rectangle '" << p.id << "' placed as " << p.w << "x" << p.h << " but variant "
              << *p.variant << " is " << variants[*p.variant].w << "x" << variants[*p.variant].h;
          add(out, ViolationKind::kVariantMismatch, id, msg.str());
        }
      } else if (auto o = occs.find(p.id); o != occs.end()) {
        auto child = solution.layouts.find(o->second->child);
        if (child != solution.layouts.end() && (child->second.w != p.w || child->second.h != p.h)) {
          std::ostringstream msg;
          msg << "occurrence '" << p.id << "' placed as " << p.w << "x" << p.h << " but block '"
              << o->second->child << "' is " << child->second.w << "x" << child->second.h;
          add(out, ViolationKind::kOccurrenceDimMismatch, id, msg.str());
        }
      } else {
        add(out, ViolationKind::kUnknownPlacement, id, "placement '" + p.id + "' is not an object of the block");
        continue;
      }
      if (p.x < 0 || p.y < 0 || p.w <= 0 || p.h <= 0 || p.right() > layout.w || p.top() > layout.h) {
        std::ostringstream msg;
        msg << "object '" << p.id << "' at (" << p.x << "," << p.y << ") size " << p.w << "x" << p.h
            << " exceeds block " << layout.w << "x" << layout.h;
        add(out, ViolationKind::kContainment, id, msg.str());
      }
    }
    for (const auto& r : block.rects) {
      if (!placed.count(r.id)) add(out, ViolationKind::kMissingPlacement, id, "rectangle '" + r.id + "' not placed");
    }
    for (const auto& o : block.occs) {
      if (!placed.count(o.id)) add(out, ViolationKind::kMissingPlacement, id, "occurrence '" + o.id + "' not placed");
    }

    // Sweep in x: only pairs whose x-ranges intersect are compared.
    std::vector<const Placement*> order;
    for (const auto& p : layout.placements) order.push_back(&p);
    std::sort(order.begin(), order.end(), [](const Placement* a, const Placement* b) { return a->x < b->x; });
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t j = i + 1; j < order.size() && order[j]->x < order[i]->right(); ++j) {
        if (overlaps(*order[i], *order[j])) {
          add(out, ViolationKind::kOverlap, id, "objects '" + order[i]->id + "' and '" + order[j]->id + "' overlap");
        }
      }
    }
  }
  return out;
}

Objective objective(const Solution& solution, const std::string& top) {
  auto it = solution.layouts.find(top);
  if (it == solution.layouts.end()) throw Error("no layout for top block '" + top + "'");
  return {it->second.w + it->second.h, it->second.w * it->second.h};
}

std::vector<std::string> subtree_blocks(const Instance& instance, const std::string& root) {
  std::vector<std::string> order;
  if (!instance.blocks.count(root)) return order;
  std::set<std::string> seen{root};
  order.push_back(root);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& occ : instance.blocks.at(order[i]).occs) {
      if (instance.blocks.count(occ.child) && seen.insert(occ.child).second) order.push_back(occ.child);
    }
  }
  return order;
}

std::vector<std::string> topological_order(const Instance& instance) {
  return subtree_blocks(instance, instance.top);
}

std::vector<std::pair<std::string, int>> children_of(const Block& block) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& occ : block.occs) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& c) { return c.first == occ.child; });
    if (it == out.end()) {
      out.emplace_back(occ.child, 1);
    } else {
      ++it->second;
    }
  }
  return out;
}

std::map<std::string, int> block_depths(const Instance& instance) {
  std::map<std::string, int> depth;
  depth[instance.top] = 1;
  for (const auto& id : topological_order(instance)) {
    for (const auto& occ : instance.block(id).occs) depth[occ.child] = depth[id] + 1;
  }
  return depth;
}

}  // namespace hpack
