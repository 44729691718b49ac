#include "hpack/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hpack {

BoundTable compute_bounds(const Instance& instance) {
  BoundTable table;
  auto order = topological_order(instance);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Block& block = instance.block(*it);
    Length area = 0;
    for (const auto& occ : block.occs) area += table.area_lb.at(occ.child);
    for (const auto& rect : block.rects) {
      Length best = std::numeric_limits<Length>::max();
      for (const auto& v : rect.variants) best = std::min(best, v.area());
      area += best;
    }
    table.area_lb[*it] = area;
    table.hp_lb[*it] = 2.0 * std::sqrt(static_cast<double>(area));
  }
  return table;
}

std::map<std::string, DimDomain> compute_domains(const Instance& instance) {
  std::map<std::string, DimDomain> out;
  auto order = topological_order(instance);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Block& block = instance.block(*it);
    DimDomain d;
    for (const auto& occ : block.occs) {
      const DimDomain& c = out.at(occ.child);
      d.w_min = std::max(d.w_min, c.w_min);
      d.h_floor = std::max(d.h_floor, c.h_floor);
      d.w_max += c.w_max;
    }
    for (const auto& rect : block.rects) {
      Length min_w = std::numeric_limits<Length>::max();
      Dim lowest{std::numeric_limits<Length>::max(), std::numeric_limits<Length>::max()};
      for (const auto& v : rect.variants) {
        min_w = std::min(min_w, v.w);
        if (v.h < lowest.h || (v.h == lowest.h && v.w < lowest.w)) lowest = v;
      }
      d.w_min = std::max(d.w_min, min_w);
      d.h_floor = std::max(d.h_floor, lowest.h);
      d.w_max += lowest.w;
    }
    out[*it] = d;
  }
  return out;
}

}  // namespace hpack
