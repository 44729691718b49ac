#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hpack/model.hpp"

namespace hpack {

// W <= w_cap implies H >= h_min.
struct ImplicationCut {
  Length w_cap = 0;
  Length h_min = 0;
  friend bool operator==(const ImplicationCut&, const ImplicationCut&) = default;
};

// Region of still potentially feasible (W, H) pairs of one child block:
// the area hyperbola W*H >= area_lb, a width range, implication cuts kept as
// a staircase of maximal steps, and a lower width exclusion.
class DimFrontier {
 public:
  DimFrontier(Length area_lb, Length w_min, Length w_max);

  void add_implication_cut(Length w_cap, Length h_min);
  // W < w_right implies H >= h_min.
  void widen_cut(Length w_right, Length h_min);
  // Excludes every W <= w_excl. Returns false when no admissible width is
  // left, which is also reported by exhausted().
  bool add_min_width_cut(Length w_excl);

  Length min_height(Length w) const;
  bool admissible(Length w) const;
  bool exhausted() const;
  // Smallest admissible width.
  Length first_width() const;

  // Pareto pairs (W, min_height(W)) sorted by W, subsampled evenly to at most
  // max_candidates (0 keeps all) with both extremes kept. Pairs in `keep` are
  // merged in as given. Throws Error when exhausted.
  std::vector<Dim> candidate_dims(std::size_t max_candidates, const std::vector<Dim>& keep = {}) const;

  Length area_lb() const { return area_lb_; }
  Length w_min() const { return w_min_; }
  Length w_max() const { return w_max_; }
  Length excluded_up_to() const { return w_excl_; }
  // W ascending, h_min strictly descending.
  const std::vector<ImplicationCut>& steps() const { return steps_; }

 private:
  Length area_lb_;
  Length w_min_;
  Length w_max_;
  Length w_excl_ = 0;
  std::vector<ImplicationCut> steps_;
};

}  // namespace hpack
