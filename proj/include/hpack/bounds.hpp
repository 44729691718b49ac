#pragma once

#include <map>
#include <string>

#include "hpack/model.hpp"

namespace hpack {

struct BoundTable {
  std::map<std::string, Length> area_lb;
  std::map<std::string, double> hp_lb;
};

// Recursive area bound: occurrences contribute their child's bound, rectangles
// their smallest-area variant. hp_lb = 2 * sqrt(area_lb).
BoundTable compute_bounds(const Instance& instance);

// Range of block widths worth considering.
//   w_min   widest mandatory object (min width over options, recursively)
//   w_max   all objects side by side, each in its lowest option
//   h_floor tallest mandatory object (min height over options, recursively)
// The side-by-side packing realizes (w_max, h_floor), so that pair is always
// feasible.
struct DimDomain {
  Length w_min = 0;
  Length w_max = 0;
  Length h_floor = 0;
};

std::map<std::string, DimDomain> compute_domains(const Instance& instance);

}  // namespace hpack
