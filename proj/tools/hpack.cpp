// Command line front end: instance generation, bounds, single-block packing,
// hierarchical solving, checking, rendering and benchmarking.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hpack/bounds.hpp"
#include "hpack/generator.hpp"
#include "hpack/harness.hpp"
#include "hpack/json_io.hpp"
#include "hpack/packer.hpp"
#include "hpack/render.hpp"

using namespace hpack;

namespace {

// Exit code 1: the input is invalid or the problem infeasible.
struct Rejected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t effective_seed(std::uint64_t seed) {
  if (const char* env = std::getenv("HPACK_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(std::string("HPACK_SEED is not an unsigned integer: ") + env);
    }
  }
  return seed;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

Instance load_instance(const std::string& path) {
  Instance instance = instance_from_json(read_json_file(path));
  if (auto v = validate_instance(instance); !v.empty()) {
    std::ostringstream msg;
    msg << "invalid instance:";
    for (const auto& x : v) msg << "\n  " << to_string(x.kind) << ": " << x.message;
    throw Rejected(msg.str());
  }
  return instance;
}

double parse_time(const std::string& s) {
  if (s == "inf" || s == "none") return kUnlimited;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !(v > 0)) throw Error("");
    return v;
  } catch (const std::exception&) {
    throw Error("expected a positive number of seconds or 'inf', got '" + s + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical rectangle packing solvers"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  std::string gen_preset = "L2-I", gen_config, gen_out;
  std::uint64_t gen_seed = 0;
  gen->add_option("--preset", gen_preset, "Instance family (L1-NV, L1, L2-S/I/L, L3, L3-M, L4, L4-M, L5, L6, L7)");
  gen->add_option("--config", gen_config, "Generator configuration JSON (overrides --preset)");
  gen->add_option("--seed", gen_seed, "Random seed (HPACK_SEED takes precedence)");
  gen->add_option("-o,--output", gen_out, "Output file (default stdout)");

  // bounds
  auto* bnd = app.add_subcommand("bounds", "Print per-block lower bounds");
  std::string bnd_instance;
  bnd->add_option("instance", bnd_instance)->required();

  // pack
  auto* pk = app.add_subcommand("pack", "Solve an isolated single-block task");
  std::string pk_objects, pk_objective = "hp", pk_out, pk_time = "inf", pk_period = "inf", pk_block = "B";
  Length pk_cap = 0;
  pk->add_option("objects", pk_objects, "Objects JSON")->required();
  pk->add_option("--objective", pk_objective, "hp, height (under --cap width) or width (under --cap height)")
      ->check(CLI::IsMember({"hp", "height", "width"}));
  pk->add_option("--cap", pk_cap, "Width or height cap");
  pk->add_option("--time", pk_time, "Time limit in seconds or 'inf'");
  pk->add_option("--period", pk_period, "Improvement period in seconds or 'inf'");
  pk->add_option("--block", pk_block, "Block id used in the output");
  pk->add_option("-o,--output", pk_out);

  // solve
  auto* sv = app.add_subcommand("solve", "Solve a hierarchical instance");
  std::string sv_instance, sv_method = "lbbd", sv_alpha = "r", sv_time = "60", sv_period = "auto", sv_loop = "auto";
  std::string sv_out, sv_trace;
  int sv_variants = 3;
  std::size_t sv_candidates = 24;
  sv->add_option("instance", sv_instance)->required();
  sv->add_option("--method", sv_method)->check(CLI::IsMember({"heur", "bu", "lbbd", "exact"}));
  sv->add_option("--variants", sv_variants, "Variants per block for bu and heur");
  sv->add_option("--alpha", sv_alpha, "LBBD fine-tuning: 0, 1 or r")->check(CLI::IsMember({"0", "1", "r"}));
  sv->add_option("--time", sv_time, "Total time in seconds");
  sv->add_option("--period", sv_period, "LBBD improvement period in seconds (auto: time / 60)");
  sv->add_option("--loop", sv_loop, "LBBD main loop limit per block in seconds (auto: time / 20)");
  sv->add_option("--candidates", sv_candidates, "LBBD frontier pairs per child (0 = all)");
  sv->add_option("--trace", sv_trace, "Write the LBBD trace JSON here");
  sv->add_option("-o,--output", sv_out);

  // check
  auto* ck = app.add_subcommand("check", "Check a solution against an instance");
  std::string ck_instance, ck_solution;
  ck->add_option("instance", ck_instance)->required();
  ck->add_option("solution", ck_solution)->required();

  // render
  auto* rd = app.add_subcommand("render", "Draw a solution or a child's cut region as SVG");
  std::string rd_instance, rd_solution, rd_cuts, rd_block, rd_out;
  double rd_scale = 0.0;
  rd->add_option("instance", rd_instance);
  rd->add_option("solution", rd_solution);
  rd->add_option("--cuts", rd_cuts, "LBBD trace JSON; draws the frontier of --block");
  rd->add_option("--block", rd_block);
  rd->add_option("--scale", rd_scale, "Pixels per length unit (default fits 800 px)");
  rd->add_option("-o,--output", rd_out);

  // bench
  auto* bn = app.add_subcommand("bench", "Run methods over instance sets");
  std::vector<std::string> bn_instances, bn_presets;
  std::string bn_methods = "heur,bu3,lbbdr", bn_time = "60", bn_csv;
  int bn_count = 5;
  std::uint64_t bn_seed = 1;
  bn->add_option("instances", bn_instances, "Instance files");
  bn->add_option("--preset", bn_presets, "Generate --count instances of each preset");
  bn->add_option("--count", bn_count);
  bn->add_option("--seed", bn_seed, "First seed of generated instances");
  bn->add_option("--methods", bn_methods, "Comma separated: heur, bu<N>, lbbd0, lbbd1, lbbdr, exact");
  bn->add_option("--time", bn_time, "Time per instance and method in seconds");
  bn->add_option("--csv", bn_csv, "Write per-run rows here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      GenConfig config;
      if (!gen_config.empty()) {
        config = gen_config_from_json(read_json_file(gen_config));
        if (gen->count("--seed")) config.seed = gen_seed;
      } else {
        auto preset = find_preset(gen_preset);
        if (!preset) throw Rejected("unknown preset '" + gen_preset + "'");
        config = preset->config;
        config.seed = gen_seed;
      }
      config.seed = effective_seed(config.seed);
      emit(gen_out, dump(instance_to_json(generate(config))));
    } else if (*bnd) {
      emit("", dump(bounds_to_json(compute_bounds(load_instance(bnd_instance)))));
    } else if (*pk) {
      PackTask task;
      task.objects = objects_from_json(read_json_file(pk_objects));
      if (pk_objective == "hp") {
        task.objective = PackObjective::min_half_perimeter();
      } else {
        if (pk_cap <= 0) throw Rejected("--cap is required for objective " + pk_objective);
        task.objective = pk_objective == "height" ? PackObjective::min_height(pk_cap) : PackObjective::min_width(pk_cap);
      }
      task.budget = parse_time(pk_time);
      task.improvement_period = parse_time(pk_period);
      PackResult r = solve(task);
      std::cerr << "status " << to_string(r.reason) << ", nodes " << r.nodes << ", " << r.elapsed << " s\n";
      if (!r.best) throw Rejected("infeasible");
      emit(pk_out, dump(Json{{"layouts", Json{{pk_block, layout_to_json(*r.best)}}}}));
    } else if (*sv) {
      const Instance instance = load_instance(sv_instance);
      MethodSpec m = MethodSpec::parse(sv_method);
      m.variants = sv_variants;
      if (m.variants < 1) throw Rejected("--variants must be at least 1");
      m.alpha = sv_alpha == "0" ? AlphaPolicy::kNone : sv_alpha == "1" ? AlphaPolicy::kOne : AlphaPolicy::kRadical;
      m.time = parse_time(sv_time);
      if (sv_period != "auto") m.improvement_period = parse_time(sv_period);
      if (sv_loop != "auto") m.loop_limit = parse_time(sv_loop);
      m.max_candidates = sv_candidates;
      RunOutput out = run_method(instance, m);
      const GapReport g = gaps(instance, out.solution, compute_bounds(instance));
      std::cerr << m.name() << ": W+H " << g.wh << " (gap " << g.wh_gap << "%), area " << g.area << " (gap "
                << g.area_gap << "%), " << out.runtime << " s\n";
      emit(sv_out, dump(solution_to_json(out.solution)));
      if (!sv_trace.empty()) {
        if (!out.trace) throw Rejected("--trace needs an LBBD method");
        write_json_file(sv_trace, trace_to_json(*out.trace));
      }
    } else if (*ck) {
      const Instance instance = load_instance(ck_instance);
      const Solution solution = solution_from_json(read_json_file(ck_solution));
      const auto violations = check_feasible(instance, solution);
      if (!violations.empty()) {
        for (const auto& v : violations) std::cout << to_string(v.kind) << " [" << v.block << "] " << v.message << "\n";
        return 1;
      }
      const GapReport g = gaps(instance, solution, compute_bounds(instance));
      std::cout << "feasible: W+H " << g.wh << " (gap " << g.wh_gap << "%), area " << g.area << " (gap "
                << g.area_gap << "%)\n";
    } else if (*rd) {
      if (!rd_cuts.empty()) {
        if (rd_block.empty()) throw Rejected("--cuts needs --block");
        emit(rd_out, render_frontier_svg(read_json_file(rd_cuts), rd_block));
      } else {
        if (rd_instance.empty() || rd_solution.empty()) throw Rejected("render needs an instance and a solution");
        const Instance instance = load_instance(rd_instance);
        const Solution solution = solution_from_json(read_json_file(rd_solution));
        if (auto v = check_feasible(instance, solution); !v.empty()) {
          throw Rejected("infeasible solution: " + v.front().message);
        }
        emit(rd_out, render_solution_svg(instance, solution, rd_scale));
      }
    } else if (*bn) {
      std::vector<BenchCase> cases;
      for (const auto& path : bn_instances) cases.push_back({"files", path, 0, load_instance(path)});
      const std::uint64_t first = effective_seed(bn_seed);
      for (const auto& name : bn_presets) {
        auto preset = find_preset(name);
        if (!preset) throw Rejected("unknown preset '" + name + "'");
        for (int i = 0; i < bn_count; ++i) {
          GenConfig c = preset->config;
          c.seed = first + static_cast<std::uint64_t>(i);
          cases.push_back({name, name + "-" + std::to_string(c.seed), c.seed, generate(c)});
        }
      }
      if (cases.empty()) throw Rejected("no instances given");
      std::vector<MethodSpec> methods;
      std::stringstream list(bn_methods);
      for (std::string item; std::getline(list, item, ',');) {
        MethodSpec m = MethodSpec::parse(item);
        m.time = parse_time(bn_time);
        methods.push_back(m);
      }
      const auto rows = bench(cases, methods);
      for (const auto& r : rows) {
        if (!r.error.empty()) std::cerr << r.instance << " " << r.method << ": " << r.error << "\n";
      }
      if (!bn_csv.empty()) emit(bn_csv, bench_csv(rows));
      std::cout << bench_table(rows);
    }
  } catch (const Rejected& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
