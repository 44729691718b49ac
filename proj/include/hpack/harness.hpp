#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hpack/bounds.hpp"
#include "hpack/json_io.hpp"
#include "hpack/lbbd.hpp"
#include "hpack/model.hpp"

namespace hpack {

struct GapReport {
  double wh_gap = 0.0;    // percent over lb_hp
  double area_gap = 0.0;  // percent over lb_area
  Length wh = 0;
  Length area = 0;
  double lb_hp = 0.0;
  Length lb_area = 0;
  std::string method;
  double runtime = 0.0;
};

// gap = (value / bound - 1) * 100 for the top block. Throws Error when the
// solution is infeasible.
GapReport gaps(const Instance& instance, const Solution& solution, const BoundTable& bounds);

enum class MethodKind { kHeur, kBottomUp, kLbbd, kExact };

struct MethodSpec {
  MethodKind kind = MethodKind::kHeur;
  int variants = 3;                          // bottom-up and heur
  AlphaPolicy alpha = AlphaPolicy::kRadical;  // lbbd
  double time = 60.0;                        // seconds
  // lbbd; when absent they keep the reference ratio of 10 s and 30 s to a
  // 600 s run: time / 60 and time / 20.
  std::optional<double> improvement_period;
  std::optional<double> loop_limit;
  std::size_t max_candidates = 24;           // lbbd

  // heur, bu, bu<N>, lbbd, lbbd0, lbbd1, lbbdr, exact.
  static MethodSpec parse(const std::string& name);
  std::string name() const;
};

struct RunOutput {
  Solution solution;
  double runtime = 0.0;
  std::optional<LBBDTrace> trace;
};

RunOutput run_method(const Instance& instance, const MethodSpec& method);

struct BenchCase {
  std::string set;
  std::string name;
  std::uint64_t seed = 0;
  Instance instance;
};

struct BenchRow {
  std::string set;
  std::string instance;
  std::uint64_t seed = 0;
  std::string method;
  std::optional<GapReport> report;
  std::string error;  // set when the run failed
};

// Runs every method on every case, sequentially.
std::vector<BenchRow> bench(const std::vector<BenchCase>& cases, const std::vector<MethodSpec>& methods);

// instance,method,seed,wh,area,lb_hp,lb_area,wh_gap,area_gap,runtime
std::string bench_csv(const std::vector<BenchRow>& rows);

// One line per set, one "mean (median)" column per method, for W+H and AREA gaps.
std::string bench_table(const std::vector<BenchRow>& rows);

Json trace_to_json(const LBBDTrace& trace);
Json frontier_to_json(const DimFrontier& frontier);
Json bounds_to_json(const BoundTable& bounds);

}  // namespace hpack
