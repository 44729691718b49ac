#include "hpack/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hpack {

namespace {

struct Rect {
  Length x, y, w, h;
  Length right() const { return x + w; }
  Length top() const { return y + h; }
  bool contains(const Rect& o) const {
    return o.x >= x && o.y >= y && o.right() <= right() && o.top() <= top();
  }
  bool intersects(const Rect& o) const {
    return x < o.right() && o.x < right() && y < o.top() && o.y < top();
  }
};

// Maximal free rectangles of a strip; every lowest-leftmost feasible position
// is the bottom-left corner of one of them.
class FreeSpace {
 public:
  FreeSpace(Length width, Length height) { free_.push_back({0, 0, width, height}); }

  const std::vector<Rect>& rects() const { return free_; }

  void occupy(const Rect& used) {
    std::vector<Rect> next;
    next.reserve(free_.size() + 4);
    std::vector<Rect> added;
    for (const Rect& f : free_) {
      if (!f.intersects(used)) {
        next.push_back(f);
        continue;
      }
      if (used.x > f.x) added.push_back({f.x, f.y, used.x - f.x, f.h});
      if (used.right() < f.right()) added.push_back({used.right(), f.y, f.right() - used.right(), f.h});
      if (used.y > f.y) added.push_back({f.x, f.y, f.w, used.y - f.y});
      if (used.top() < f.top()) added.push_back({f.x, used.top(), f.w, f.top() - used.top()});
    }
    // Only the new pieces can be redundant: untouched rects were maximal and
    // pieces of split rects never contain an untouched one.
    std::vector<Rect> kept;
    for (std::size_t i = 0; i < added.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < added.size() && !redundant; ++j) {
        if (i == j) continue;
        if (added[j].contains(added[i]) && (!added[i].contains(added[j]) || j < i)) redundant = true;
      }
      for (std::size_t j = 0; j < next.size() && !redundant; ++j) {
        if (next[j].contains(added[i])) redundant = true;
      }
      if (!redundant) kept.push_back(added[i]);
    }
    next.insert(next.end(), kept.begin(), kept.end());
    free_ = std::move(next);
  }

 private:
  std::vector<Rect> free_;
};

Length sum_max_widths(const std::vector<ObjectSpec>& objects) {
  Length s = 0;
  for (const auto& o : objects) {
    Length m = 0;
    for (const auto& d : o.options) m = std::max(m, d.w);
    s += m;
  }
  return s;
}

Length sum_max_heights(const std::vector<ObjectSpec>& objects) {
  Length s = 0;
  for (const auto& o : objects) {
    Length m = 0;
    for (const auto& d : o.options) m = std::max(m, d.h);
    s += m;
  }
  return s;
}

void require_fits(const std::vector<ObjectSpec>& objects, Length cap) {
  for (const auto& o : objects) {
    if (min_option_width(o) > cap) {
      throw Error("object '" + o.id + "' is wider than the width cap in all options");
    }
  }
}

std::vector<int> area_order(const std::vector<ObjectSpec>& objects) {
  struct Key {
    Length area;
    Length side;
  };
  std::vector<Key> keys;
  keys.reserve(objects.size());
  for (const auto& o : objects) {
    Key k{std::numeric_limits<Length>::max(), 0};
    for (const auto& d : o.options) {
      if (d.area() < k.area) k = {d.area(), std::max(d.w, d.h)};
    }
    keys.push_back(k);
  }
  std::vector<int> order(objects.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (keys[a].area != keys[b].area) return keys[a].area > keys[b].area;
    if (keys[a].side != keys[b].side) return keys[a].side > keys[b].side;
    return objects[a].id < objects[b].id;
  });
  return order;
}

BlockLayout empty_layout(const std::vector<ObjectSpec>& objects) {
  BlockLayout layout;
  layout.placements.resize(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) layout.placements[i].id = objects[i].id;
  return layout;
}

}  // namespace

BlockLayout bottom_left_ordered(const std::vector<ObjectSpec>& objects, const std::vector<int>& order,
                                std::optional<Length> width_cap) {
  validate_objects(objects);
  const Length cap = width_cap.value_or(sum_max_widths(objects));
  require_fits(objects, cap);
  GroupIndex groups(objects);
  std::vector<int> group_option(groups.count(), -1);
  FreeSpace space(cap, sum_max_heights(objects) + 1);
  BlockLayout layout = empty_layout(objects);

  for (int idx : order) {
    const ObjectSpec& o = objects[idx];
    const int g = groups.group_of[idx];
    struct Best {
      Length y, x;
      int option;
    } best{std::numeric_limits<Length>::max(), std::numeric_limits<Length>::max(), -1};
    for (int t = 0; t < static_cast<int>(o.options.size()); ++t) {
      if (g >= 0 && group_option[g] >= 0 && group_option[g] != t) continue;
      const Dim d = o.options[t];
      if (d.w > cap) continue;
      for (const Rect& f : space.rects()) {
        if (d.w > f.w || d.h > f.h) continue;
        if (f.y < best.y || (f.y == best.y && f.x < best.x)) best = {f.y, f.x, t};
      }
    }
    if (best.option < 0) throw Error("bottom-left could not place object '" + o.id + "'");
    const Dim d = o.options[best.option];
    if (g >= 0) group_option[g] = best.option;
    space.occupy({best.x, best.y, d.w, d.h});
    layout.placements[idx] = Placement{o.id, best.x, best.y, d.w, d.h, best.option};
  }
  fit_bounding_box(layout);
  return layout;
}

BlockLayout bottom_left(const std::vector<ObjectSpec>& objects, std::optional<Length> width_cap) {
  return bottom_left_ordered(objects, area_order(objects), width_cap);
}

BlockLayout best_fit(const std::vector<ObjectSpec>& objects, Length width_cap, FitPolicy policy) {
  validate_objects(objects);
  require_fits(objects, width_cap);
  GroupIndex groups(objects);
  std::vector<int> group_option(groups.count(), -1);
  BlockLayout layout = empty_layout(objects);

  struct Segment {
    Length x, w, y;
  };
  std::vector<Segment> sky{{0, width_cap, 0}};
  std::vector<int> pending = area_order(objects);

  auto merge = [&sky] {
    std::vector<Segment> merged;
    for (const auto& s : sky) {
      if (!merged.empty() && merged.back().y == s.y) {
        merged.back().w += s.w;
      } else {
        merged.push_back(s);
      }
    }
    sky = std::move(merged);
  };

  while (!pending.empty()) {
    std::size_t low = 0;
    for (std::size_t i = 1; i < sky.size(); ++i) {
      if (sky[i].y < sky[low].y) low = i;
    }
    const Segment gap = sky[low];

    // Widest fitting option; ties go to the larger area, then the earlier
    // object in area order.
    int pick = -1;
    int pick_option = -1;
    Dim pick_dim{0, 0};
    for (std::size_t k = 0; k < pending.size(); ++k) {
      const int idx = pending[k];
      const int g = groups.group_of[idx];
      const auto& opts = objects[idx].options;
      for (int t = 0; t < static_cast<int>(opts.size()); ++t) {
        if (g >= 0 && group_option[g] >= 0 && group_option[g] != t) continue;
        const Dim d = opts[t];
        if (d.w > gap.w) continue;
        if (pick < 0 || d.w > pick_dim.w || (d.w == pick_dim.w && d.area() > pick_dim.area())) {
          pick = static_cast<int>(k);
          pick_option = t;
          pick_dim = d;
        }
      }
    }

    const bool has_left = low > 0;
    const bool has_right = low + 1 < sky.size();
    const Length left_h = has_left ? sky[low - 1].y : std::numeric_limits<Length>::max();
    const Length right_h = has_right ? sky[low + 1].y : std::numeric_limits<Length>::max();

    if (pick < 0) {
      if (!has_left && !has_right) throw Error("best-fit found no object for a full-width gap");
      sky[low].y = std::min(left_h, right_h);
      merge();
      continue;
    }

    const int idx = pending[pick];
    pending.erase(pending.begin() + pick);
    if (int g = groups.group_of[idx]; g >= 0) group_option[g] = pick_option;

    bool at_left = true;
    switch (policy) {
      case FitPolicy::kLeftmost:
        at_left = true;
        break;
      case FitPolicy::kTallestNeighbor:
        at_left = left_h >= right_h;
        break;
      case FitPolicy::kSmallestNeighbor:
        at_left = left_h <= right_h;
        break;
    }
    const Length x = at_left ? gap.x : gap.x + gap.w - pick_dim.w;
    layout.placements[idx] = Placement{objects[idx].id, x, gap.y, pick_dim.w, pick_dim.h, pick_option};

    std::vector<Segment> replacement;
    if (x > gap.x) replacement.push_back({gap.x, x - gap.x, gap.y});
    replacement.push_back({x, pick_dim.w, gap.y + pick_dim.h});
    if (x + pick_dim.w < gap.x + gap.w) replacement.push_back({x + pick_dim.w, gap.x + gap.w - x - pick_dim.w, gap.y});
    sky.erase(sky.begin() + low);
    sky.insert(sky.begin() + low, replacement.begin(), replacement.end());
    merge();
  }
  fit_bounding_box(layout);
  return layout;
}

bool better_layout(const BlockLayout& a, const BlockLayout& b, bool capped) {
  if (capped) {
    if (a.h != b.h) return a.h < b.h;
    return a.w < b.w;
  }
  if (a.w + a.h != b.w + b.h) return a.w + a.h < b.w + b.h;
  return a.w * a.h < b.w * b.h;
}

BlockLayout heuristic_portfolio(const std::vector<ObjectSpec>& objects, std::optional<Length> width_cap,
                                Length bounds_area) {
  validate_objects(objects);
  Length cap = 0;
  if (width_cap) {
    cap = *width_cap;
  } else {
    cap = static_cast<Length>(std::ceil(std::sqrt(static_cast<double>(std::max<Length>(bounds_area, 1)))));
    cap = std::max(cap, widest_mandatory(objects));
  }
  const bool capped = width_cap.has_value();

  std::vector<BlockLayout> members;
  members.push_back(bottom_left(objects, width_cap));
  if (!capped) members.push_back(bottom_left(objects, cap));
  for (FitPolicy p : {FitPolicy::kLeftmost, FitPolicy::kTallestNeighbor, FitPolicy::kSmallestNeighbor}) {
    members.push_back(best_fit(objects, cap, p));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (better_layout(members[i], members[best], capped)) best = i;
  }
  return members[best];
}

}  // namespace hpack
