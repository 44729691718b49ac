#include "hpack/bottom_up.hpp"

#include <algorithm>
#include <cmath>

#include "hpack/bounds.hpp"
#include "hpack/heuristics.hpp"

namespace hpack {

std::map<std::string, double> allocate_time(const Instance& instance, double total_time) {
  std::size_t total = 0;
  for (const auto& [id, b] : instance.blocks) total += b.object_count();
  std::map<std::string, double> out;
  for (const auto& [id, b] : instance.blocks) {
    out[id] = total == 0 ? total_time / static_cast<double>(instance.blocks.size())
                         : total_time * static_cast<double>(b.object_count()) / static_cast<double>(total);
  }
  return out;
}

std::vector<Length> gen_width_caps(Length area_lb, Length w_min, Length w_max, int n) {
  (void)area_lb;  // the ratio range w^2 / area_lb maps back to widths directly
  if (n < 1) throw Error("variant count must be at least 1");
  w_max = std::max(w_max, w_min);
  std::vector<Length> caps;
  const double lo = std::log(static_cast<double>(w_min));
  const double hi = std::log(static_cast<double>(w_max));
  for (int q = 0; q < n; ++q) {
    const double t = n == 1 ? 0.5 : static_cast<double>(q) / static_cast<double>(n - 1);
    const Length w = std::max(w_min, static_cast<Length>(std::llround(std::exp(lo + t * (hi - lo)))));
    if (std::find(caps.begin(), caps.end(), w) == caps.end()) caps.push_back(w);
  }
  return caps;
}

namespace {

struct Variant {
  BlockLayout layout;  // single-block layout over block_objects
};

// Keeps layouts no other layout beats in both dimensions, one per (W, H).
std::vector<Variant> pareto(std::vector<Variant> variants) {
  std::vector<Variant> out;
  for (std::size_t i = 0; i < variants.size(); ++i) {
    const Dim a = variants[i].layout.dim();
    bool dominated = false;
    for (std::size_t j = 0; j < variants.size() && !dominated; ++j) {
      const Dim b = variants[j].layout.dim();
      if (i == j) continue;
      dominated = b.w <= a.w && b.h <= a.h && (b != a || j < i);
    }
    if (!dominated) out.push_back(std::move(variants[i]));
  }
  return out;
}

}  // namespace

Solution run_bottom_up(const Instance& instance, const BUConfig& config) {
  if (config.variants < 1 || !(config.total_time > 0)) throw Error("invalid bottom-up configuration");
  const BoundTable bounds = compute_bounds(instance);
  const auto domains = compute_domains(instance);
  const auto tau = allocate_time(instance, config.total_time);
  auto order = topological_order(instance);
  std::reverse(order.begin(), order.end());

  std::map<std::string, std::vector<Variant>> variants;
  std::map<std::string, std::vector<Dim>> options;

  auto pack = [&](const std::vector<ObjectSpec>& objects, PackObjective objective, double budget,
                  Length area) -> BlockLayout {
    if (config.solver == BUSolver::kHeuristics) {
      std::optional<Length> cap;
      if (objective.mode == PackObjective::Mode::kMinHeight) cap = objective.cap;
      return heuristic_portfolio(objects, cap, area);
    }
    PackTask task;
    task.objects = objects;
    task.objective = objective;
    task.budget = std::max(budget, 1e-3);
    task.improvement_period = config.improvement_period;
    task.bounds_area = area;
    PackResult result = solve(task);
    if (!result.best) throw Error("bottom-up: strip packing found no layout");
    return *result.best;
  };

  BlockLayout top_layout;
  for (const auto& id : order) {
    const Block& block = instance.block(id);
    const auto objects = block_objects(block, options);
    const Length area = bounds.area_lb.at(id);
    if (id == instance.top) {
      top_layout = pack(objects, PackObjective::min_half_perimeter(), tau.at(id), area);
      continue;
    }
    const DimDomain& dom = domains.at(id);
    const Length floor = widest_mandatory(objects);
    std::vector<Length> caps;
    for (Length cap : gen_width_caps(area, dom.w_min, dom.w_max, config.variants)) {
      cap = std::max(cap, floor);
      if (std::find(caps.begin(), caps.end(), cap) == caps.end()) caps.push_back(cap);
    }
    std::vector<Variant> found;
    for (Length cap : caps) {
      found.push_back({pack(objects, PackObjective::min_height(cap),
                            tau.at(id) / static_cast<double>(caps.size()), area)});
    }
    found = pareto(std::move(found));
    for (const auto& v : found) options[id].push_back(v.layout.dim());
    variants[id] = std::move(found);
  }

  // Each block takes the variant its unique parent committed to.
  Solution solution;
  std::vector<std::pair<std::string, BlockLayout>> pending{{instance.top, top_layout}};
  while (!pending.empty()) {
    auto [id, layout] = std::move(pending.back());
    pending.pop_back();
    const Block& block = instance.block(id);
    for (std::size_t k = 0; k < block.occs.size(); ++k) {
      const auto& p = layout.placements[block.rects.size() + k];
      const std::string& child = block.occs[k].child;
      if (solution.layouts.count(child) ||
          std::any_of(pending.begin(), pending.end(), [&](const auto& e) { return e.first == child; })) {
        continue;
      }
      pending.emplace_back(child, variants.at(child).at(*p.variant).layout);
    }
    solution.layouts[id] = as_block_layout(block, layout);
  }
  return solution;
}

}  // namespace hpack
