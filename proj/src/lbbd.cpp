#include "hpack/lbbd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "hpack/bounds.hpp"
#include "hpack/heuristics.hpp"

namespace hpack {

const char* to_string(AlphaPolicy policy) {
  switch (policy) {
    case AlphaPolicy::kNone: return "none";
    case AlphaPolicy::kOne: return "one";
    case AlphaPolicy::kRadical: return "radical";
  }
  return "unknown";
}

Length alpha_step(AlphaPolicy policy, Length h_act) {
  switch (policy) {
    case AlphaPolicy::kNone: return 0;
    case AlphaPolicy::kOne: return 1;
    case AlphaPolicy::kRadical: return h_act / 20;
  }
  return 0;
}

LBBDConfig LBBDConfig::exact() {
  LBBDConfig c;
  c.alpha = AlphaPolicy::kNone;
  c.improvement_period = kUnlimited;
  c.loop_limit = kUnlimited;
  c.total_time = kUnlimited;
  c.max_candidates = 0;
  return c;
}

bool LBBDConfig::is_exact() const {
  return alpha == AlphaPolicy::kNone && improvement_period == kUnlimited && loop_limit == kUnlimited &&
         total_time == kUnlimited && max_candidates == 0;
}

namespace {

using Clock = std::chrono::steady_clock;

// A layout of a block together with layouts of all blocks below it.
struct Subtree {
  Dim dim;
  Solution partial;
};

struct ChildState {
  DimFrontier frontier;
  std::map<Dim, Solution> memo;  // verified layouts by dims

  std::vector<Dim> memo_dims() const {
    std::vector<Dim> out;
    for (const auto& [d, s] : memo) out.push_back(d);
    return out;
  }
};

struct BlockOutcome {
  Subtree act;
  std::optional<Subtree> left;
  std::optional<Length> right_w;
};

bool better(Dim a, Dim b, bool capped) {
  if (capped) return a.h != b.h ? a.h < b.h : a.w < b.w;
  if (a.w + a.h != b.w + b.h) return a.w + a.h < b.w + b.h;
  return a.area() < b.area();
}

// Re-expresses a layout's option indices against another option list with
// the same objects. Fails when some placed dims are not offered.
std::optional<BlockLayout> remap(const BlockLayout& layout, const std::vector<ObjectSpec>& objects) {
  if (layout.placements.size() != objects.size()) return std::nullopt;
  BlockLayout out = layout;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    auto& p = out.placements[i];
    const auto& opts = objects[i].options;
    auto it = std::find(opts.begin(), opts.end(), Dim{p.w, p.h});
    if (it == opts.end()) return std::nullopt;
    p.variant = static_cast<int>(it - opts.begin());
  }
  return out;
}

class Lbbd {
 public:
  Lbbd(const Instance& instance, const LBBDConfig& config)
      : instance_(instance),
        config_(config),
        exact_(config.is_exact()),
        bounds_(compute_bounds(instance)),
        domains_(compute_domains(instance)) {
    for (const auto& [id, block] : instance.blocks) {
      if (id == instance.top) continue;
      const DimDomain& d = domains_.at(id);
      ChildState state{DimFrontier(bounds_.area_lb.at(id), d.w_min, d.w_max), {}};
      state.frontier.add_implication_cut(d.w_max, d.h_floor);
      states_.emplace(id, std::move(state));
    }
  }

  LBBDResult run() {
    const double deadline = exact_ ? kUnlimited : config_.total_time;
    BlockOutcome top = solve_block(instance_.top, std::nullopt, deadline);
    LBBDResult result{std::move(top.act.partial), std::move(trace_), {}};
    for (const auto& [id, state] : states_) {
      result.children.emplace(id, ChildReport{state.frontier, state.memo_dims()});
    }
    return result;
  }

 private:
  double now() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  std::size_t begin_event(const std::string& block, const char* phase, std::optional<Length> cap) {
    trace_.events.push_back({block, phase, now(), 0.0, cap, std::nullopt});
    return trace_.events.size() - 1;
  }

  void end_event(std::size_t index, std::optional<Dim> incumbent) {
    trace_.events[index].t_end = now();
    trace_.events[index].incumbent = incumbent;
  }

  PackResult pack_result(const std::string& block, const std::vector<ObjectSpec>& objects,
                         PackObjective objective, std::optional<BlockLayout> warm, double deadline) {
    PackTask task;
    task.objects = objects;
    task.objective = objective;
    task.warm_start = std::move(warm);
    task.bounds_area = bounds_.area_lb.at(block);
    if (!exact_) {
      task.budget = std::max(deadline - now(), 1e-3);
      task.improvement_period = config_.improvement_period;
    }
    return solve(task);
  }

  std::optional<BlockLayout> pack(const std::string& block, const std::vector<ObjectSpec>& objects,
                                  PackObjective objective, std::optional<BlockLayout> warm, double deadline) {
    return pack_result(block, objects, objective, std::move(warm), deadline).best;
  }

  static PackObjective objective_for(std::optional<Length> cap) {
    return cap ? PackObjective::min_height(*cap) : PackObjective::min_half_perimeter();
  }

  std::vector<std::string> children_by_area(const Block& block) const {
    std::vector<std::string> out;
    for (const auto& [child, count] : children_of(block)) out.push_back(child);
    std::stable_sort(out.begin(), out.end(), [&](const std::string& a, const std::string& b) {
      return bounds_.area_lb.at(a) > bounds_.area_lb.at(b);
    });
    return out;
  }

  // Master options: frontier pairs plus every verified pair.
  std::map<std::string, std::vector<Dim>> master_options(const Block& block) const {
    std::map<std::string, std::vector<Dim>> out;
    for (const auto& [child, count] : children_of(block)) {
      const ChildState& s = states_.at(child);
      out[child] = s.frontier.exhausted() ? s.memo_dims()
                                          : s.frontier.candidate_dims(config_.max_candidates, s.memo_dims());
    }
    return out;
  }

  std::map<std::string, std::vector<Dim>> restricted_options(const Block& block) const {
    std::map<std::string, std::vector<Dim>> out;
    for (const auto& [child, count] : children_of(block)) out[child] = states_.at(child).memo_dims();
    return out;
  }

  Dim child_dim(const Block& block, const BlockLayout& layout, const std::string& child) const {
    for (std::size_t k = 0; k < block.occs.size(); ++k) {
      if (block.occs[k].child == child) {
        const auto& p = layout.placements[block.rects.size() + k];
        return {p.w, p.h};
      }
    }
    throw Error("block '" + block.id + "' has no occurrence of '" + child + "'");
  }

  Subtree assemble(const Block& block, const BlockLayout& layout) const {
    Subtree out{layout.dim(), {}};
    out.partial.layouts[block.id] = as_block_layout(block, layout);
    for (const auto& [child, count] : children_of(block)) {
      const Solution& sub = states_.at(child).memo.at(child_dim(block, layout, child));
      out.partial.layouts.insert(sub.layouts.begin(), sub.layouts.end());
    }
    return out;
  }

  void remember(const std::string& child, const Subtree& sub) {
    states_.at(child).memo.emplace(sub.dim, sub.partial);
  }

  // Heuristic layout of a whole subtree; children get a near-square cap.
  Subtree heuristic_subtree(const std::string& id, std::optional<Length> cap) {
    const Block& block = instance_.block(id);
    std::map<std::string, std::vector<Dim>> options;
    Solution partial;
    for (const auto& [child, count] : children_of(block)) {
      const DimDomain& d = domains_.at(child);
      Length child_cap = static_cast<Length>(
          std::ceil(1.1 * std::sqrt(static_cast<double>(bounds_.area_lb.at(child)))));
      child_cap = std::max(child_cap, d.w_min);
      if (cap) child_cap = std::min(child_cap, *cap);
      Subtree sub = heuristic_subtree(child, child_cap);
      remember(child, sub);
      options[child] = {sub.dim};
      partial.layouts.insert(sub.partial.layouts.begin(), sub.partial.layouts.end());
    }
    const auto objects = block_objects(block, options);
    BlockLayout layout = heuristic_portfolio(objects, cap, bounds_.area_lb.at(id));
    partial.layouts[id] = as_block_layout(block, layout);
    return {layout.dim(), std::move(partial)};
  }

  BlockOutcome solve_block(const std::string& id, std::optional<Length> cap, double parent_deadline) {
    const Block& block = instance_.block(id);
    const bool is_top = id == instance_.top;
    const double loop_deadline = is_top ? parent_deadline : std::min(parent_deadline, now() + config_.loop_limit);

    std::optional<Subtree> best;
    std::optional<BlockLayout> best_layout;  // single-block view of best

    if (block.occs.empty()) {
      const auto objects = block_objects(block, {});
      const auto ev = begin_event(id, "pack", cap);
      best_layout = pack(id, objects, objective_for(cap), std::nullopt, loop_deadline);
      if (!best_layout) throw Error("no layout for block '" + id + "'");
      best = assemble(block, *best_layout);
      end_event(ev, best->dim);
    } else {
      const auto children = children_by_area(block);
      while (true) {
        // Master: child dims free within their frontiers.
        const auto m_objects = block_objects(block, master_options(block));
        std::optional<BlockLayout> warm;
        if (best_layout) warm = remap(*best_layout, m_objects);
        auto ev = begin_event(id, "master", cap);
        const PackResult master_result = pack_result(id, m_objects, objective_for(cap), warm, loop_deadline);
        const auto& master = master_result.best;
        end_event(ev, best ? std::optional<Dim>(best->dim) : std::nullopt);
        if (!master) throw Error("master problem of block '" + id + "' has no solution");

        // Verify each child's PLAN, largest child first.
        bool accepted = true;
        std::map<std::string, Dim> act;
        for (const auto& child : children) {
          const Dim plan = child_dim(block, *master, child);
          ChildState& state = states_.at(child);
          std::optional<Dim> known;
          for (const auto& [d, s] : state.memo) {
            if (d.w <= plan.w && d.h <= plan.h && (!known || better(d, *known, true))) known = d;
          }
          if (known) {
            act[child] = *known;
            continue;
          }
          if (!exact_ && now() >= loop_deadline) {
            accepted = false;
            // No time to verify: stand in with the lowest memoized pair that
            // fits PLAN's width, or a heuristic layout under that width.
            std::optional<Dim> fits;
            for (const auto& [d, s] : state.memo) {
              if (d.w <= plan.w && (!fits || better(d, *fits, true))) fits = d;
            }
            if (!fits) {
              const auto fb = begin_event(child, "fallback", plan.w);
              trace_.fallback = true;
              Subtree sub = heuristic_subtree(child, std::max(plan.w, domains_.at(child).w_min));
              remember(child, sub);
              end_event(fb, sub.dim);
              fits = sub.dim;
            }
            act[child] = *fits;
            continue;
          }
          const auto vev = begin_event(child, "verify", plan.w);
          BlockOutcome out = solve_block(child, plan.w, loop_deadline);
          end_event(vev, out.act.dim);
          remember(child, out.act);
          if (out.left) remember(child, *out.left);
          const Length h_cut = out.left ? out.left->dim.h : out.act.dim.h;
          state.frontier.add_implication_cut(plan.w, h_cut);
          if (out.right_w) state.frontier.widen_cut(*out.right_w, h_cut);
          snapshot(child, plan, out);
          act[child] = out.act.dim;
          if (out.act.dim.h > plan.h || out.act.dim.w > plan.w) accepted = false;
        }

        // Restricted master: children limited to verified dims.
        const auto r_objects = block_objects(block, restricted_options(block));
        std::optional<BlockLayout> seed = restricted_seed(block, *master, act, r_objects, cap);
        if (best_layout) {
          auto incumbent = remap(*best_layout, r_objects);
          if (incumbent && (!seed || better(incumbent->dim(), seed->dim(), cap.has_value()))) seed = incumbent;
        }
        ev = begin_event(id, "restricted", cap);
        const auto restricted = pack(id, r_objects, objective_for(cap), seed, loop_deadline);
        if (restricted && (!best || better(restricted->dim(), best->dim, cap.has_value()))) {
          best = assemble(block, *restricted);
          best_layout = restricted;
        }
        end_event(ev, best ? std::optional<Dim>(best->dim) : std::nullopt);
        if (!best) throw Error("restricted master of block '" + id + "' has no solution");

        if (!exact_ && now() >= loop_deadline) break;
        // The top block has no parent waiting, so it keeps going until its
        // master is proven or time is up.
        if (accepted && (exact_ || !is_top || master_result.proven_optimal)) break;
      }
    }

    BlockOutcome outcome{*best, std::nullopt, std::nullopt};
    if (!is_top) fine_tune(block, *best_layout, outcome, parent_deadline);
    return outcome;
  }

  // Bottom-left over the master's placement order with ACT dims, merged with
  // the portfolio; the better one seeds the restricted master.
  std::optional<BlockLayout> restricted_seed(const Block& block, const BlockLayout& master,
                                             const std::map<std::string, Dim>& act,
                                             const std::vector<ObjectSpec>& r_objects, std::optional<Length> cap) {
    std::map<std::string, std::vector<Dim>> fixed;
    for (const auto& [child, d] : act) fixed[child] = {d};
    const auto a_objects = block_objects(block, fixed);
    std::vector<int> order(a_objects.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      const auto& pa = master.placements[a];
      const auto& pb = master.placements[b];
      return pa.y != pb.y ? pa.y < pb.y : pa.x < pb.x;
    });
    std::optional<BlockLayout> seed = remap(bottom_left_ordered(a_objects, order, cap), r_objects);
    BlockLayout portfolio = heuristic_portfolio(r_objects, cap, bounds_.area_lb.at(block.id));
    if (!seed || better(portfolio.dim(), seed->dim(), cap.has_value())) seed = std::move(portfolio);
    return seed;
  }

  // LEFT: narrowest layout no taller than ACT. RIGHT: width the master
  // needs to get alpha lower, used only to widen the parent's cut.
  void fine_tune(const Block& block, const BlockLayout& act_layout, BlockOutcome& outcome, double parent_deadline) {
    const Length h_act = outcome.act.dim.h;
    const auto r_objects = block_objects(block, restricted_options(block));
    double deadline = exact_ ? kUnlimited : std::min(parent_deadline, now() + config_.improvement_period);

    auto ev = begin_event(block.id, "fine_tune_left", h_act);
    auto left = pack(block.id, r_objects, PackObjective::min_width(h_act), remap(act_layout, r_objects), deadline);
    if (left) outcome.left = assemble(block, *left);
    end_event(ev, outcome.left ? std::optional<Dim>(outcome.left->dim) : std::nullopt);

    const Length alpha = alpha_step(config_.alpha, h_act);
    if (alpha < 1 || h_act - alpha < 1) return;
    const auto m_objects = block_objects(block, master_options(block));
    deadline = exact_ ? kUnlimited : std::min(parent_deadline, now() + config_.improvement_period);
    ev = begin_event(block.id, "fine_tune_right", h_act - alpha);
    auto right = pack(block.id, m_objects, PackObjective::min_width(h_act - alpha), std::nullopt, deadline);
    if (right) outcome.right_w = right->w;
    end_event(ev, right ? std::optional<Dim>(right->dim()) : std::nullopt);
  }

  void snapshot(const std::string& child, Dim plan, const BlockOutcome& out) {
    const DimFrontier& f = states_.at(child).frontier;
    FrontierSnapshot s;
    s.block = child;
    s.t = now();
    s.area_lb = f.area_lb();
    s.w_min = f.w_min();
    s.w_max = f.w_max();
    s.w_excl = f.excluded_up_to();
    s.steps = f.steps();
    s.plan = plan;
    s.act = out.act.dim;
    if (out.left) s.left = out.left->dim;
    s.right_w = out.right_w;
    trace_.frontiers.push_back(std::move(s));
  }

  const Instance& instance_;
  LBBDConfig config_;
  bool exact_;
  BoundTable bounds_;
  std::map<std::string, DimDomain> domains_;
  std::map<std::string, ChildState> states_;
  LBBDTrace trace_;
  Clock::time_point start_ = Clock::now();
};

}  // namespace

LBBDResult run_lbbd(const Instance& instance, const LBBDConfig& config) {
  if (auto v = validate_instance(instance); !v.empty()) throw Error("invalid instance: " + v.front().message);
  if (!(config.total_time > 0) || !(config.loop_limit > 0) || !(config.improvement_period > 0)) {
    throw Error("LBBD time limits must be positive");
  }
  return Lbbd(instance, config).run();
}

}  // namespace hpack
