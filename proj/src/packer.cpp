#include "hpack/packer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <utility>

#include "hpack/heuristics.hpp"

namespace hpack {

const char* to_string(PackStatus status) {
  switch (status) {
    case PackStatus::kOptimal: return "optimal";
    case PackStatus::kBudget: return "budget";
    case PackStatus::kImprovementStall: return "improvement_stall";
    case PackStatus::kInfeasible: return "infeasible";
  }
  return "unknown";
}

Length cumulative_lb(const std::vector<ObjectSpec>& objects, Length width) {
  Length area = 0;
  Length tallest = 0;
  for (const auto& o : objects) {
    Length best_area = std::numeric_limits<Length>::max();
    Length best_h = std::numeric_limits<Length>::max();
    for (const auto& d : o.options) {
      if (d.w > width) continue;
      best_area = std::min(best_area, d.area());
      best_h = std::min(best_h, d.h);
    }
    if (best_h == std::numeric_limits<Length>::max()) return std::numeric_limits<Length>::max();
    area += best_area;
    tallest = std::max(tallest, best_h);
  }
  if (width <= 0) return std::numeric_limits<Length>::max();
  return std::max((area + width - 1) / width, tallest);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

struct Control {
  Clock::time_point start = Clock::now();
  Clock::time_point last_improvement = start;
  double budget = kUnlimited;
  double period = kUnlimited;
  std::uint64_t nodes = 0;
  bool aborted = false;
  PackStatus abort_reason = PackStatus::kBudget;

  bool tick() {
    if (aborted) return true;
    if ((++nodes & 63) != 0) return false;
    return check();
  }

  bool check() {
    if (aborted) return true;
    if (budget == kUnlimited && period == kUnlimited) return false;
    const auto now = Clock::now();
    if (seconds_between(start, now) > budget) {
      aborted = true;
      abort_reason = PackStatus::kBudget;
    } else if (seconds_between(last_improvement, now) > period) {
      aborted = true;
      abort_reason = PackStatus::kImprovementStall;
    }
    return aborted;
  }
};

// Top-right corners of placed objects that are not dominated; X ascending,
// Y descending. The region below-left of the staircase is the envelope: later
// objects are placed outside it, at its inner corners.
using Step = std::pair<Length, Length>;
using Staircase = std::vector<Step>;

Staircase with_corner(const Staircase& s, Length x, Length y) {
  for (const auto& [sx, sy] : s) {
    if (sx >= x && sy >= y) return s;
  }
  Staircase out;
  out.reserve(s.size() + 1);
  bool inserted = false;
  for (const auto& st : s) {
    if (st.first <= x && st.second <= y) continue;
    if (!inserted && st.first > x) {
      out.emplace_back(x, y);
      inserted = true;
    }
    out.push_back(st);
  }
  if (!inserted) out.emplace_back(x, y);
  return out;
}

Length staircase_area(const Staircase& s) {
  Length area = 0;
  Length prev = 0;
  for (const auto& [x, y] : s) {
    area += (x - prev) * y;
    prev = x;
  }
  return area;
}

// Area of the envelope after adding corner (x, y), without building it.
Length area_with_corner(const Staircase& s, Length x, Length y) {
  Length area = 0;
  Length prev = 0;
  bool inserted = false;
  for (const auto& st : s) {
    if (st.first <= x && st.second <= y) continue;
    if (!inserted && st.first > x) {
      area += (x - prev) * y;
      prev = x;
      inserted = true;
    }
    area += (st.first - prev) * st.second;
    prev = st.first;
  }
  if (!inserted) area += (x - prev) * y;
  return area;
}

std::vector<Step> corner_points(const Staircase& s) {
  std::vector<Step> out;
  if (s.empty()) {
    out.emplace_back(0, 0);
    return out;
  }
  out.emplace_back(0, s.front().second);
  for (std::size_t k = 0; k + 1 < s.size(); ++k) out.emplace_back(s[k].first, s[k + 1].second);
  out.emplace_back(s.back().first, 0);
  return out;
}

bool contains(const std::vector<Step>& points, Step p) {
  return std::find(points.begin(), points.end(), p) != points.end();
}

// Objects with identical option lists and group are interchangeable; only the
// first unplaced member of such a class is branched on.
struct Classes {
  std::vector<int> class_of;
  std::vector<std::vector<int>> members;

  explicit Classes(const std::vector<ObjectSpec>& objects) : class_of(objects.size()) {
    std::map<std::pair<std::vector<Dim>, std::optional<std::string>>, int> ids;
    for (std::size_t i = 0; i < objects.size(); ++i) {
      auto key = std::make_pair(objects[i].options, objects[i].group);
      auto [it, inserted] = ids.emplace(std::move(key), static_cast<int>(members.size()));
      if (inserted) members.emplace_back();
      class_of[i] = it->second;
      members[it->second].push_back(static_cast<int>(i));
    }
  }
};

constexpr int kFullSearch = std::numeric_limits<int>::max();
constexpr int kDiscrepancySchedule[] = {0, 1, 2, 4, 8, 16, 32, 64, kFullSearch};

// Depth-first branch and bound for the strip of width `width_`: minimizes the
// height below `limit_` (inclusive). Branches on (object, option, envelope
// corner) ordered by least wasted area. A child of rank r consumes r units of
// the discrepancy budget; children beyond it are cut and the run is reported
// as truncated.
class StripSearch {
 public:
  enum class Outcome { kComplete, kTruncated, kAborted };
  using LeafHandler = std::function<Length(const BlockLayout&)>;

  StripSearch(const std::vector<ObjectSpec>& objects, const Classes& classes, const GroupIndex& groups,
              Length width, Control& control, LeafHandler on_leaf)
      : objects_(objects),
        classes_(classes),
        groups_(groups),
        width_(width),
        control_(control),
        on_leaf_(std::move(on_leaf)),
        placed_in_class_(classes.members.size(), 0),
        group_option_(groups.count(), -1),
        group_unplaced_(groups.count(), 0) {
    for (int g = 0; g < groups.count(); ++g) group_unplaced_[g] = static_cast<int>(groups.members[g].size());
  }

  Outcome run(Length limit, int discrepancy) {
    limit_ = limit;
    truncated_ = false;
    items_.clear();
    envs_.assign(1, Staircase{});
    if (limit_ >= 1) dfs(0, discrepancy);
    if (control_.aborted) return Outcome::kAborted;
    return truncated_ ? Outcome::kTruncated : Outcome::kComplete;
  }

 private:
  struct Item {
    int obj;
    Length x, y, w, h;
    int option;
    bool committed_group;
  };

  struct Candidate {
    Length waste;
    Length y;
    Length area;
    Length x;
    int obj;
    int option;
  };

  Length current_min_area(int obj) const {
    const int g = groups_.group_of[obj];
    if (g >= 0 && group_option_[g] >= 0) return objects_[obj].options[group_option_[g]].area();
    Length best = std::numeric_limits<Length>::max();
    for (const auto& d : objects_[obj].options) {
      if (d.w <= width_ && d.h <= limit_) best = std::min(best, d.area());
    }
    return best;
  }

  void dfs(int depth, int discrepancy) {
    if (control_.tick()) return;
    const int n = static_cast<int>(objects_.size());
    if (depth == n) {
      leaf();
      return;
    }
    const Staircase& env = envs_[depth];
    const Length env_area = staircase_area(env);

    // Remaining area, or prune when some object no longer fits at all.
    Length remaining = 0;
    for (std::size_t c = 0; c < classes_.members.size(); ++c) {
      const auto& members = classes_.members[c];
      for (std::size_t k = placed_in_class_[c]; k < members.size(); ++k) {
        const Length a = current_min_area(members[k]);
        if (a == std::numeric_limits<Length>::max()) return;
        remaining += a;
      }
    }
    if (env_area + remaining > width_ * limit_) return;

    const std::vector<Step> corners = corner_points(env);
    std::vector<Step> prev_corners;
    if (depth > 0) prev_corners = corner_points(envs_[depth - 1]);

    std::vector<Candidate> candidates;
    for (std::size_t c = 0; c < classes_.members.size(); ++c) {
      if (placed_in_class_[c] >= classes_.members[c].size()) continue;
      const int obj = classes_.members[c][placed_in_class_[c]];
      const int g = groups_.group_of[obj];
      const Length own_min = current_min_area(obj);
      const auto& options = objects_[obj].options;
      for (int t = 0; t < static_cast<int>(options.size()); ++t) {
        if (g >= 0 && group_option_[g] >= 0 && group_option_[g] != t) continue;
        const Dim d = options[t];
        if (d.w > width_ || d.h > limit_) continue;
        Length after = remaining - own_min;
        if (g >= 0 && group_option_[g] < 0) after += (group_unplaced_[g] - 1) * (d.area() - own_min);
        for (const auto& [cx, cy] : corners) {
          if (cx + d.w > width_ || cy + d.h > limit_) continue;
          if (depth > 0 && is_transposed_duplicate(depth, obj, cx, cy, d, prev_corners)) continue;
          const Length new_area = area_with_corner(env, cx + d.w, cy + d.h);
          if (new_area + after > width_ * limit_) continue;
          candidates.push_back({new_area - env_area - d.area(), cy, d.area(), cx, obj, t});
        }
      }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      if (a.waste != b.waste) return a.waste < b.waste;
      if (a.y != b.y) return a.y < b.y;
      if (a.area != b.area) return a.area > b.area;
      if (a.x != b.x) return a.x < b.x;
      if (a.obj != b.obj) return a.obj < b.obj;
      return a.option < b.option;
    });

    for (std::size_t rank = 0; rank < candidates.size(); ++rank) {
      if (discrepancy != kFullSearch && static_cast<int>(rank) > discrepancy) {
        truncated_ = true;
        break;
      }
      const Candidate& cand = candidates[rank];
      const Dim d = objects_[cand.obj].options[cand.option];
      if (cand.y + d.h > limit_) continue;  // the limit may have dropped meanwhile
      place(cand, d);
      dfs(depth + 1, discrepancy == kFullSearch ? kFullSearch : discrepancy - static_cast<int>(rank));
      unplace();
      if (control_.aborted) return;
    }
  }

  // Placing `obj` right after the previous object yields the same packing as
  // the reverse order when both orders are legal; only the order with the
  // smaller object index first is explored.
  bool is_transposed_duplicate(int depth, int obj, Length cx, Length cy, Dim d,
                               const std::vector<Step>& prev_corners) const {
    const Item& prev = items_[depth - 1];
    if (prev.obj < obj) return false;
    if (!contains(prev_corners, {cx, cy})) return false;
    const Staircase swapped = with_corner(envs_[depth - 1], cx + d.w, cy + d.h);
    return contains(corner_points(swapped), {prev.x, prev.y});
  }

  void place(const Candidate& cand, Dim d) {
    const int g = groups_.group_of[cand.obj];
    bool committed = false;
    if (g >= 0) {
      if (group_option_[g] < 0) {
        group_option_[g] = cand.option;
        committed = true;
      }
      --group_unplaced_[g];
    }
    ++placed_in_class_[classes_.class_of[cand.obj]];
    items_.push_back({cand.obj, cand.x, cand.y, d.w, d.h, cand.option, committed});
    envs_.push_back(with_corner(envs_.back(), cand.x + d.w, cand.y + d.h));
  }

  void unplace() {
    const Item item = items_.back();
    items_.pop_back();
    envs_.pop_back();
    --placed_in_class_[classes_.class_of[item.obj]];
    if (int g = groups_.group_of[item.obj]; g >= 0) {
      ++group_unplaced_[g];
      if (item.committed_group) group_option_[g] = -1;
    }
  }

  void leaf() {
    BlockLayout layout;
    layout.placements.resize(objects_.size());
    for (const auto& it : items_) {
      layout.placements[it.obj] = Placement{objects_[it.obj].id, it.x, it.y, it.w, it.h, it.option};
    }
    fit_bounding_box(layout);
    limit_ = std::min(limit_, on_leaf_(layout));
  }

  const std::vector<ObjectSpec>& objects_;
  const Classes& classes_;
  const GroupIndex& groups_;
  const Length width_;
  Control& control_;
  LeafHandler on_leaf_;

  Length limit_ = 0;
  bool truncated_ = false;
  std::vector<Item> items_;
  std::vector<Staircase> envs_;
  std::vector<std::size_t> placed_in_class_;
  std::vector<int> group_option_;
  std::vector<int> group_unplaced_;
};

class Solver {
 public:
  Solver(const std::vector<ObjectSpec>& objects, const PackTask& task,
         std::function<void(const BlockLayout&)> report)
      : objects_(objects), task_(task), report_(std::move(report)), classes_(objects), groups_(objects) {
    control_.budget = task.budget;
    control_.period = task.improvement_period;
  }

  PackResult min_height(Length width_cap, std::optional<BlockLayout> seed) {
    PackResult result;
    if (widest_mandatory(objects_) > width_cap) return finish(result, PackStatus::kInfeasible);
    const Length area = task_.bounds_area.value_or(total_min_area(objects_));
    set_incumbent(seed ? *seed : heuristic_portfolio(objects_, width_cap, area));

    const Length lb = cumulative_lb(objects_, width_cap);
    if (best_->h <= lb) return finish(result, PackStatus::kOptimal);

    StripSearch search(objects_, classes_, groups_, width_cap, control_, [this](const BlockLayout& layout) {
      if (layout.h < best_->h) set_incumbent(layout);
      return best_->h - 1;
    });
    for (int discrepancy : kDiscrepancySchedule) {
      if (best_->h <= lb) return finish(result, PackStatus::kOptimal);
      auto outcome = search.run(best_->h - 1, discrepancy);
      if (outcome == StripSearch::Outcome::kAborted) return finish(result, control_.abort_reason);
      if (outcome == StripSearch::Outcome::kComplete) return finish(result, PackStatus::kOptimal);
    }
    return finish(result, PackStatus::kOptimal);
  }

  PackResult min_half_perimeter(std::optional<BlockLayout> seed) {
    PackResult result;
    const Length area = task_.bounds_area.value_or(total_min_area(objects_));
    set_incumbent(seed ? *seed : heuristic_portfolio(objects_, std::nullopt, area));

    const Length w_lo = widest_mandatory(objects_);
    const Length tallest = tallest_mandatory(objects_);
    Length w_hi = 0;
    for (const auto& o : objects_) {
      Length m = 0;
      for (const auto& d : o.options) m = std::max(m, d.w);
      w_hi += m;
    }
    w_hi = std::min(w_hi, best_hp() - tallest - 1);

    struct Width {
      Length w;
      Length lb;
    };
    std::vector<Width> open;
    for (Length w = w_lo; w <= w_hi; ++w) {
      const Length h_lb = cumulative_lb(objects_, w);
      if (h_lb == std::numeric_limits<Length>::max() || w + h_lb >= best_hp()) continue;
      open.push_back({w, w + h_lb});
    }
    std::stable_sort(open.begin(), open.end(), [](const Width& a, const Width& b) { return a.lb < b.lb; });

    for (int discrepancy : kDiscrepancySchedule) {
      std::vector<Width> still_open;
      for (const Width& width : open) {
        if (width.lb >= best_hp()) continue;
        const Length w = width.w;
        StripSearch search(objects_, classes_, groups_, w, control_, [this, w](const BlockLayout& layout) {
          if (layout.w + layout.h < best_hp()) set_incumbent(layout);
          return best_hp() - w - 1;
        });
        auto outcome = search.run(best_hp() - w - 1, discrepancy);
        if (outcome == StripSearch::Outcome::kAborted) return finish(result, control_.abort_reason);
        if (outcome == StripSearch::Outcome::kTruncated) still_open.push_back(width);
      }
      open = std::move(still_open);
      if (open.empty()) break;
    }
    return finish(result, PackStatus::kOptimal);
  }

 private:
  Length best_hp() const { return best_->w + best_->h; }

  void set_incumbent(const BlockLayout& layout) {
    best_ = layout;
    control_.last_improvement = Clock::now();
    if (report_) report_(layout);
  }

  PackResult& finish(PackResult& result, PackStatus status) {
    result.best = best_;
    result.reason = status;
    result.proven_optimal = status == PackStatus::kOptimal;
    result.nodes = control_.nodes;
    result.elapsed = seconds_between(control_.start, Clock::now());
    return result;
  }

  const std::vector<ObjectSpec>& objects_;
  const PackTask& task_;
  std::function<void(const BlockLayout&)> report_;
  Classes classes_;
  GroupIndex groups_;
  Control control_;
  std::optional<BlockLayout> best_;
};

}  // namespace

PackResult solve(const PackTask& task) {
  validate_objects(task.objects);
  if (task.objects.empty()) throw Error("pack task has no objects");
  if (!(task.budget > 0) || !(task.improvement_period > 0)) throw Error("pack budgets must be positive");

  const auto& obj = task.objective;
  switch (obj.mode) {
    case PackObjective::Mode::kMinHeight: {
      std::optional<BlockLayout> seed = task.warm_start;
      if (seed) {
        if (auto problem = layout_problem(task.objects, *seed, obj.cap)) throw Error("invalid warm start: " + *problem);
      }
      Solver solver(task.objects, task, task.on_incumbent);
      return solver.min_height(obj.cap, seed);
    }
    case PackObjective::Mode::kMinWidth: {
      const auto objects = transposed(task.objects);
      std::optional<BlockLayout> seed;
      if (task.warm_start) {
        if (auto problem = layout_problem(task.objects, *task.warm_start, std::nullopt, obj.cap)) {
          throw Error("invalid warm start: " + *problem);
        }
        seed = transposed(*task.warm_start);
      }
      std::function<void(const BlockLayout&)> report;
      if (task.on_incumbent) report = [&task](const BlockLayout& l) { task.on_incumbent(transposed(l)); };
      Solver solver(objects, task, report);
      PackResult result = solver.min_height(obj.cap, seed);
      if (result.best) result.best = transposed(*result.best);
      return result;
    }
    case PackObjective::Mode::kMinHalfPerimeter: {
      std::optional<BlockLayout> seed = task.warm_start;
      if (seed) {
        if (auto problem = layout_problem(task.objects, *seed)) throw Error("invalid warm start: " + *problem);
      }
      Solver solver(task.objects, task, task.on_incumbent);
      return solver.min_half_perimeter(seed);
    }
  }
  throw Error("unknown pack objective");
}

}  // namespace hpack
