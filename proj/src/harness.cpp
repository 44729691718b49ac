#include "hpack/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "hpack/bottom_up.hpp"

namespace hpack {

GapReport gaps(const Instance& instance, const Solution& solution, const BoundTable& bounds) {
  if (auto v = check_feasible(instance, solution); !v.empty()) {
    throw Error("infeasible solution: " + v.front().message);
  }
  const Objective obj = objective(solution, instance.top);
  GapReport r;
  r.wh = obj.half_perimeter;
  r.area = obj.area;
  r.lb_hp = bounds.hp_lb.at(instance.top);
  r.lb_area = bounds.area_lb.at(instance.top);
  r.wh_gap = (static_cast<double>(r.wh) / r.lb_hp - 1.0) * 100.0;
  r.area_gap = (static_cast<double>(r.area) / static_cast<double>(r.lb_area) - 1.0) * 100.0;
  return r;
}

MethodSpec MethodSpec::parse(const std::string& name) {
  MethodSpec m;
  if (name == "heur") {
    m.kind = MethodKind::kHeur;
  } else if (name == "exact") {
    m.kind = MethodKind::kExact;
  } else if (name.rfind("bu", 0) == 0) {
    m.kind = MethodKind::kBottomUp;
    if (name.size() > 2) {
      const std::string digits = name.substr(2);
      if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw Error("unknown method '" + name + "'");
      }
      m.variants = std::stoi(digits);
      if (m.variants < 1) throw Error("bottom-up needs at least one variant");
    }
  } else if (name == "lbbd" || name == "lbbdr") {
    m.kind = MethodKind::kLbbd;
  } else if (name == "lbbd0") {
    m.kind = MethodKind::kLbbd;
    m.alpha = AlphaPolicy::kNone;
  } else if (name == "lbbd1") {
    m.kind = MethodKind::kLbbd;
    m.alpha = AlphaPolicy::kOne;
  } else {
    throw Error("unknown method '" + name + "'");
  }
  return m;
}

std::string MethodSpec::name() const {
  switch (kind) {
    case MethodKind::kHeur: return "heur";
    case MethodKind::kExact: return "exact";
    case MethodKind::kBottomUp: return "bu" + std::to_string(variants);
    case MethodKind::kLbbd:
      switch (alpha) {
        case AlphaPolicy::kNone: return "lbbd0";
        case AlphaPolicy::kOne: return "lbbd1";
        case AlphaPolicy::kRadical: return "lbbdr";
      }
  }
  return "unknown";
}

RunOutput run_method(const Instance& instance, const MethodSpec& method) {
  if (auto v = validate_instance(instance); !v.empty()) throw Error("invalid instance: " + v.front().message);
  const auto start = std::chrono::steady_clock::now();
  RunOutput out;
  switch (method.kind) {
    case MethodKind::kHeur: {
      BUConfig c;
      c.variants = method.variants;
      c.total_time = method.time;
      c.solver = BUSolver::kHeuristics;
      out.solution = run_bottom_up(instance, c);
      break;
    }
    case MethodKind::kBottomUp: {
      BUConfig c;
      c.variants = method.variants;
      c.total_time = method.time;
      out.solution = run_bottom_up(instance, c);
      break;
    }
    case MethodKind::kLbbd:
    case MethodKind::kExact: {
      LBBDConfig c = LBBDConfig::exact();
      if (method.kind == MethodKind::kLbbd) {
        c.alpha = method.alpha;
        c.total_time = method.time;
        c.improvement_period = method.improvement_period.value_or(method.time / 60.0);
        c.loop_limit = method.loop_limit.value_or(method.time / 20.0);
        c.max_candidates = method.max_candidates;
      }
      LBBDResult r = run_lbbd(instance, c);
      out.solution = std::move(r.solution);
      out.trace = std::move(r.trace);
      break;
    }
  }
  out.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<BenchRow> bench(const std::vector<BenchCase>& cases, const std::vector<MethodSpec>& methods) {
  std::vector<BenchRow> rows;
  for (const auto& c : cases) {
    const auto invalid = validate_instance(c.instance);
    const BoundTable bounds = invalid.empty() ? compute_bounds(c.instance) : BoundTable{};
    for (const auto& m : methods) {
      BenchRow row{c.set, c.name, c.seed, m.name(), std::nullopt, {}};
      if (!invalid.empty()) {
        row.error = "invalid instance: " + invalid.front().message;
        rows.push_back(std::move(row));
        continue;
      }
      try {
        RunOutput out = run_method(c.instance, m);
        GapReport g = gaps(c.instance, out.solution, bounds);
        g.method = m.name();
        g.runtime = out.runtime;
        row.report = g;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "instance,method,seed,wh,area,lb_hp,lb_area,wh_gap,area_gap,runtime\n";
  for (const auto& r : rows) {
    out << r.instance << ',' << r.method << ',' << r.seed << ',';
    if (r.report) {
      const GapReport& g = *r.report;
      out << g.wh << ',' << g.area << ',' << fixed(g.lb_hp, 6) << ',' << g.lb_area << ',' << fixed(g.wh_gap, 4)
          << ',' << fixed(g.area_gap, 4) << ',' << fixed(g.runtime, 3);
    } else {
      out << ",,,,,,";
    }
    out << '\n';
  }
  return out.str();
}

std::string bench_table(const std::vector<BenchRow>& rows) {
  std::vector<std::string> sets, methods;
  std::map<std::pair<std::string, std::string>, std::pair<std::vector<double>, std::vector<double>>> cells;
  std::map<std::pair<std::string, std::string>, int> failures;
  for (const auto& r : rows) {
    if (std::find(sets.begin(), sets.end(), r.set) == sets.end()) sets.push_back(r.set);
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) methods.push_back(r.method);
    auto& cell = cells[{r.set, r.method}];
    if (r.report) {
      cell.first.push_back(r.report->wh_gap);
      cell.second.push_back(r.report->area_gap);
    } else {
      ++failures[{r.set, r.method}];
    }
  }
  std::ostringstream out;
  for (int pass = 0; pass < 2; ++pass) {
    out << (pass == 0 ? "W+H gap [%]" : "AREA gap [%]") << "\n";
    out << "set";
    for (const auto& m : methods) out << " | " << m;
    out << "\n";
    for (const auto& s : sets) {
      out << s;
      for (const auto& m : methods) {
        const auto& cell = cells[{s, m}];
        const auto& v = pass == 0 ? cell.first : cell.second;
        out << " | ";
        if (v.empty()) {
          out << "-";
        } else {
          out << fixed(mean(v), 2) << " (" << fixed(median(v), 2) << ")";
        }
        if (int f = failures[{s, m}]; f > 0) out << " [" << f << " failed]";
      }
      out << "\n";
    }
    if (pass == 0) out << "\n";
  }
  return out.str();
}

Json frontier_to_json(const DimFrontier& f) {
  Json steps = Json::array();
  for (const auto& c : f.steps()) steps.push_back(Json::array({c.w_cap, c.h_min}));
  return Json{{"area_lb", f.area_lb()}, {"w_min", f.w_min()},  {"w_max", f.w_max()},
              {"w_excl", f.excluded_up_to()}, {"steps", steps}};
}

Json trace_to_json(const LBBDTrace& trace) {
  auto dim = [](const std::optional<Dim>& d) { return d ? Json::array({d->w, d->h}) : Json(nullptr); };
  Json events = Json::array();
  for (const auto& e : trace.events) {
    events.push_back(Json{{"block", e.block},
                          {"phase", e.phase},
                          {"t_start", e.t_start},
                          {"t_end", e.t_end},
                          {"cap", e.cap ? Json(*e.cap) : Json(nullptr)},
                          {"incumbent", dim(e.incumbent)}});
  }
  Json frontiers = Json::array();
  for (const auto& s : trace.frontiers) {
    Json steps = Json::array();
    for (const auto& c : s.steps) steps.push_back(Json::array({c.w_cap, c.h_min}));
    frontiers.push_back(Json{{"block", s.block},
                             {"t", s.t},
                             {"area_lb", s.area_lb},
                             {"w_min", s.w_min},
                             {"w_max", s.w_max},
                             {"w_excl", s.w_excl},
                             {"steps", steps},
                             {"plan", dim(s.plan)},
                             {"act", dim(s.act)},
                             {"left", dim(s.left)},
                             {"right_w", s.right_w ? Json(*s.right_w) : Json(nullptr)}});
  }
  return Json{{"fallback", trace.fallback}, {"events", events}, {"frontiers", frontiers}};
}

Json bounds_to_json(const BoundTable& bounds) {
  Json out = Json::object();
  for (const auto& [id, a] : bounds.area_lb) out[id] = Json{{"area_lb", a}, {"hp_lb", bounds.hp_lb.at(id)}};
  return out;
}

}  // namespace hpack
