#pragma once

// Brute-force reference solvers used only by the tests. They share no code
// with the library's search.

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "hpack/model.hpp"
#include "hpack/objects.hpp"

namespace oracle {

using hpack::Dim;
using hpack::Length;
using hpack::ObjectSpec;

// Does a W x H box admit a packing? Fills cells in row-major order: the first
// empty cell either holds the bottom-left corner of some unplaced object or
// stays empty for good.
inline bool fits(const std::vector<ObjectSpec>& objects, Length W, Length H) {
  const int n = static_cast<int>(objects.size());
  std::map<std::string, int> group_ids;
  std::vector<int> group(n, -1);
  for (int i = 0; i < n; ++i) {
    if (objects[i].group) group[i] = group_ids.emplace(*objects[i].group, group_ids.size()).first->second;
  }
  std::vector<int> group_choice(group_ids.size(), -1);
  std::vector<int> group_refs(group_ids.size(), 0);
  std::vector<char> grid(W * H, 0);
  std::vector<char> used(n, 0);

  Length need = 0;
  for (const auto& o : objects) {
    Length m = std::numeric_limits<Length>::max();
    for (const auto& d : o.options) m = std::min(m, d.area());
    need += m;
  }
  if (need > W * H) return false;

  std::function<bool(Length, int, Length)> go = [&](Length cell, int left, Length free_cells) -> bool {
    if (left == 0) return true;
    while (cell < W * H && grid[cell]) ++cell;
    if (cell == W * H) return false;
    Length min_need = 0;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      Length m = std::numeric_limits<Length>::max();
      for (int t = 0; t < static_cast<int>(objects[i].options.size()); ++t) {
        if (group[i] >= 0 && group_choice[group[i]] >= 0 && group_choice[group[i]] != t) continue;
        m = std::min(m, objects[i].options[t].area());
      }
      min_need += m;
    }
    if (min_need > free_cells) return false;
    const Length x = cell % W;
    const Length y = cell / W;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      bool dup = false;  // identical unplaced object earlier in the list
      for (int j = 0; j < i && !dup; ++j) {
        dup = !used[j] && objects[j].options == objects[i].options && objects[j].group == objects[i].group;
      }
      if (dup) continue;
      for (int t = 0; t < static_cast<int>(objects[i].options.size()); ++t) {
        const int g = group[i];
        if (g >= 0 && group_choice[g] >= 0 && group_choice[g] != t) continue;
        const Dim d = objects[i].options[t];
        if (x + d.w > W || y + d.h > H) continue;
        bool clear = true;
        for (Length yy = y; yy < y + d.h && clear; ++yy) {
          for (Length xx = x; xx < x + d.w && clear; ++xx) clear = !grid[yy * W + xx];
        }
        if (!clear) continue;
        for (Length yy = y; yy < y + d.h; ++yy) {
          for (Length xx = x; xx < x + d.w; ++xx) grid[yy * W + xx] = 1;
        }
        used[i] = 1;
        if (g >= 0) {
          if (group_refs[g]++ == 0) group_choice[g] = t;
        }
        const bool ok = go(cell + 1, left - 1, free_cells - d.area());
        if (g >= 0 && --group_refs[g] == 0) group_choice[g] = -1;
        used[i] = 0;
        for (Length yy = y; yy < y + d.h; ++yy) {
          for (Length xx = x; xx < x + d.w; ++xx) grid[yy * W + xx] = 0;
        }
        if (ok) return true;
      }
    }
    grid[cell] = 2;
    const bool ok = go(cell + 1, left, free_cells - 1);
    grid[cell] = 0;
    return ok;
  };
  return go(0, n, W * H);
}

inline Length sum_max(const std::vector<ObjectSpec>& objects, bool widths) {
  Length s = 0;
  for (const auto& o : objects) {
    Length m = 0;
    for (const auto& d : o.options) m = std::max(m, widths ? d.w : d.h);
    s += m;
  }
  return s;
}

// Smallest height of a box of width W holding all objects, if any.
inline std::optional<Length> min_height(const std::vector<ObjectSpec>& objects, Length W) {
  const Length h_max = sum_max(objects, false);
  for (Length H = 1; H <= h_max; ++H) {
    if (fits(objects, W, H)) return H;
  }
  return std::nullopt;
}

inline Length min_half_perimeter(const std::vector<ObjectSpec>& objects) {
  const Length w_max = sum_max(objects, true);
  const Length h_max = sum_max(objects, false);
  for (Length s = 2; s <= w_max + h_max; ++s) {
    for (Length W = 1; W < s; ++W) {
      if (W > w_max || s - W > h_max) continue;
      if (fits(objects, W, s - W)) return s;
    }
  }
  return -1;
}

// Pareto set of (W, H) boxes that hold the objects.
inline std::vector<Dim> frontier(const std::vector<ObjectSpec>& objects) {
  std::vector<Dim> out;
  const Length w_max = sum_max(objects, true);
  for (Length W = 1; W <= w_max; ++W) {
    auto h = min_height(objects, W);
    if (!h) continue;
    if (!out.empty() && out.back().h <= *h) continue;
    out.push_back({W, *h});
  }
  return out;
}

// Optimal top-block half-perimeter of a hierarchical instance: every child is
// replaced by a grouped object whose options are the child's Pareto boxes.
inline std::vector<ObjectSpec> flatten(const hpack::Instance& inst, const std::string& block,
                                       std::map<std::string, std::vector<Dim>>& fronts) {
  const auto& b = inst.block(block);
  std::vector<ObjectSpec> objects;
  for (const auto& r : b.rects) objects.push_back({r.id, r.variants, std::nullopt});
  for (const auto& o : b.occs) {
    if (!fronts.count(o.child)) fronts[o.child] = frontier(flatten(inst, o.child, fronts));
    objects.push_back({o.id, fronts[o.child], o.child});
  }
  return objects;
}

inline Length hierarchical_optimum(const hpack::Instance& inst) {
  std::map<std::string, std::vector<Dim>> fronts;
  return min_half_perimeter(flatten(inst, inst.top, fronts));
}

}  // namespace oracle
