#pragma once

// Small hand-built instances shared by the unit tests and the acceptance run.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "hpack/bounds.hpp"
#include "hpack/model.hpp"
#include "hpack/objects.hpp"

namespace fixtures {

using namespace hpack;

inline Rectangle rect(const std::string& id, std::vector<Dim> variants) { return {id, std::move(variants)}; }

// Four blocks: B1 holds three rectangles, two occurrences of B2 and one of B3;
// B2 holds one rectangle and B4; B3 and B4 hold two rectangles each.
inline Instance fig1a() {
  Instance inst;
  inst.top = "B1";
  inst.blocks["B1"] = {"B1",
                       {rect("a", {{4, 2}, {2, 4}}), rect("b", {{3, 3}}), rect("c", {{1, 5}, {5, 1}})},
                       {{"o1", "B2"}, {"o2", "B2"}, {"o3", "B3"}}};
  inst.blocks["B2"] = {"B2", {rect("d", {{2, 2}})}, {{"o4", "B4"}}};
  inst.blocks["B3"] = {"B3", {rect("e", {{3, 1}, {1, 3}}), rect("f", {{2, 2}})}, {}};
  inst.blocks["B4"] = {"B4", {rect("g", {{1, 2}}), rect("h", {{2, 1}, {1, 2}})}, {}};
  return inst;
}

// Same tree shape with one occurrence per edge; B2's subtree is the largest
// child of B1, so it is verified before B3.
inline Instance fig4a() {
  Instance inst;
  inst.top = "B1";
  inst.blocks["B1"] = {"B1",
                       {rect("a", {{5, 3}, {3, 5}}), rect("b", {{4, 4}}), rect("c", {{2, 6}, {6, 2}})},
                       {{"o1", "B2"}, {"o2", "B3"}}};
  inst.blocks["B2"] = {"B2", {rect("d", {{4, 3}, {3, 4}}), rect("e", {{2, 5}})}, {{"o3", "B4"}}};
  inst.blocks["B3"] = {"B3", {rect("f", {{3, 2}, {2, 3}}), rect("g", {{1, 2}})}, {}};
  inst.blocks["B4"] = {"B4", {rect("h", {{3, 3}}), rect("i", {{2, 4}, {4, 2}}), rect("j", {{1, 3}})}, {}};
  return inst;
}

inline Instance single_block(std::vector<Rectangle> rects) {
  Instance inst;
  inst.top = "B1";
  inst.blocks["B1"] = {"B1", std::move(rects), {}};
  return inst;
}

inline std::vector<ObjectSpec> objects(const std::vector<std::vector<Dim>>& options) {
  std::vector<ObjectSpec> out;
  for (std::size_t i = 0; i < options.size(); ++i) out.push_back({"o" + std::to_string(i), options[i], {}});
  return out;
}

// Random single-block object list with up to max_objects objects, sides up
// to max_dim and up to max_variants options each.
inline std::vector<ObjectSpec> random_objects(std::mt19937_64& rng, int max_objects, int max_dim, int max_variants) {
  auto u = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  std::vector<std::vector<Dim>> options(u(1, max_objects));
  for (auto& o : options) {
    const int v = u(1, max_variants);
    while (static_cast<int>(o.size()) < v) {
      Dim d{u(1, max_dim), u(1, max_dim)};
      if (std::find(o.begin(), o.end(), d) == o.end()) o.push_back(d);
    }
  }
  return objects(options);
}

// Random two-level instance: the top block and one or two children, each
// with at most four objects and sides up to max_dim.
inline Instance random_two_level(std::mt19937_64& rng, int max_dim) {
  auto u = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  Instance inst;
  inst.top = "B1";
  const int blocks = u(2, 3);
  for (int b = 1; b <= blocks; ++b) {
    Block blk{"B" + std::to_string(b), {}, {}};
    inst.blocks[blk.id] = blk;
  }
  // Occurrences in the top block first, so its rectangle count can fill up to four objects.
  int top_objects = 0;
  for (int b = 2; b <= blocks; ++b) {
    const int copies = u(1, 2);
    for (int k = 0; k < copies; ++k) {
      inst.blocks["B1"].occs.push_back({"o" + std::to_string(b) + "_" + std::to_string(k), "B" + std::to_string(b)});
      ++top_objects;
    }
  }
  for (int b = 1; b <= blocks; ++b) {
    Block& blk = inst.blocks["B" + std::to_string(b)];
    const int rects = b == 1 ? u(top_objects >= 4 ? 0 : 1, 4 - top_objects) : u(1, 4);
    for (int i = 0; i < rects; ++i) {
      Rectangle r{blk.id + "r" + std::to_string(i), {}};
      const int v = u(1, 2);
      while (static_cast<int>(r.variants.size()) < v) {
        Dim d{u(1, max_dim), u(1, max_dim)};
        if (std::find(r.variants.begin(), r.variants.end(), d) == r.variants.end()) r.variants.push_back(d);
      }
      blk.rects.push_back(r);
    }
  }
  return inst;
}

// Empty when the solution is feasible and its top block respects both lower
// bounds; otherwise a description of the first problem.
inline std::string soundness_problem(const Instance& inst, const Solution& sol) {
  const auto v = check_feasible(inst, sol);
  if (!v.empty()) return std::string(to_string(v.front().kind)) + ": " + v.front().message;
  const auto bounds = compute_bounds(inst);
  const Objective obj = objective(sol, inst.top);
  if (obj.area < bounds.area_lb.at(inst.top)) return "area below its lower bound";
  if (static_cast<double>(obj.half_perimeter) + 1e-9 < bounds.hp_lb.at(inst.top))
    return "half-perimeter below its lower bound";
  return {};
}

// Same checks for a single-block layout over an object list.
inline std::string layout_soundness(const std::vector<ObjectSpec>& objs, const BlockLayout& layout) {
  if (auto p = layout_problem(objs, layout)) return *p;
  if (layout.w * layout.h < total_min_area(objs)) return "area below its lower bound";
  return {};
}

}  // namespace fixtures
