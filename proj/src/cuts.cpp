#include "hpack/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

namespace hpack {

DimFrontier::DimFrontier(Length area_lb, Length w_min, Length w_max)
    : area_lb_(area_lb), w_min_(w_min), w_max_(w_max) {
  if (area_lb <= 0 || w_min <= 0 || w_max < w_min) throw Error("invalid frontier domain");
}

void DimFrontier::add_implication_cut(Length w_cap, Length h_min) {
  w_cap = std::min(w_cap, w_max_);
  if (w_cap < w_min_ || h_min <= (area_lb_ + w_cap - 1) / w_cap) return;
  // First step reaching w_cap; it dominates the new cut if it is as high.
  auto it = std::lower_bound(steps_.begin(), steps_.end(), w_cap,
                             [](const ImplicationCut& c, Length w) { return c.w_cap < w; });
  if (it != steps_.end() && it->h_min >= h_min) return;
  // Narrower steps that are not higher become redundant.
  auto first = it;
  while (first != steps_.begin() && std::prev(first)->h_min <= h_min) --first;
  if (it != steps_.end() && it->w_cap == w_cap) ++it;
  first = steps_.erase(first, it);
  steps_.insert(first, ImplicationCut{w_cap, h_min});
}

void DimFrontier::widen_cut(Length w_right, Length h_min) { add_implication_cut(w_right - 1, h_min); }

bool DimFrontier::add_min_width_cut(Length w_excl) {
  w_excl_ = std::max(w_excl_, w_excl);
  return !exhausted();
}

Length DimFrontier::min_height(Length w) const {
  Length h = (area_lb_ + w - 1) / w;
  auto it = std::lower_bound(steps_.begin(), steps_.end(), w,
                             [](const ImplicationCut& c, Length x) { return c.w_cap < x; });
  if (it != steps_.end()) h = std::max(h, it->h_min);
  return h;
}

bool DimFrontier::admissible(Length w) const { return w >= w_min_ && w <= w_max_ && w > w_excl_; }

bool DimFrontier::exhausted() const { return first_width() > w_max_; }

Length DimFrontier::first_width() const { return std::max(w_min_, w_excl_ + 1); }

std::vector<Dim> DimFrontier::candidate_dims(std::size_t max_candidates, const std::vector<Dim>& keep) const {
  if (exhausted()) throw Error("frontier has no admissible width");
  std::vector<Dim> pairs;
  for (Length w = first_width(); w <= w_max_; ++w) {
    const Length h = min_height(w);
    if (pairs.empty() || h < pairs.back().h) pairs.push_back({w, h});
  }
  if (max_candidates >= 2 && pairs.size() > max_candidates) {
    std::vector<Dim> sample;
    const double step = static_cast<double>(pairs.size() - 1) / static_cast<double>(max_candidates - 1);
    for (std::size_t i = 0; i < max_candidates; ++i) {
      const auto idx = static_cast<std::size_t>(std::llround(static_cast<double>(i) * step));
      sample.push_back(pairs[idx]);
    }
    pairs = std::move(sample);
  }
  pairs.insert(pairs.end(), keep.begin(), keep.end());
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace hpack
