#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hpack/cuts.hpp"
#include "hpack/model.hpp"
#include "hpack/packer.hpp"

namespace hpack {

// How far below H_ACT the RIGHT fine-tuning solve aims: none, 1, or
// floor(0.05 * H_ACT).
enum class AlphaPolicy { kNone, kOne, kRadical };

const char* to_string(AlphaPolicy policy);

// 0 means no RIGHT solve.
Length alpha_step(AlphaPolicy policy, Length h_act);

struct LBBDConfig {
  AlphaPolicy alpha = AlphaPolicy::kRadical;
  double improvement_period = 10.0;  // seconds, per single-block solve
  double loop_limit = 30.0;          // seconds, main loop of each non-top block
  double total_time = 60.0;
  std::size_t max_candidates = 24;   // frontier pairs per child in the master; 0 keeps all

  // No time limits, no alpha, full frontiers: every single-block solve is
  // proven optimal and the loop runs until all children accept their PLAN.
  static LBBDConfig exact();
  bool is_exact() const;
};

struct TraceEvent {
  std::string block;
  // master, verify, restricted, pack, fine_tune_left, fine_tune_right, fallback
  std::string phase;
  double t_start = 0.0;
  double t_end = 0.0;
  std::optional<Length> cap;
  std::optional<Dim> incumbent;  // block incumbent when the phase ended
};

// State of a child's frontier right after its parent processed a verification.
struct FrontierSnapshot {
  std::string block;
  double t = 0.0;
  Length area_lb = 0;
  Length w_min = 0;
  Length w_max = 0;
  Length w_excl = 0;
  std::vector<ImplicationCut> steps;
  std::optional<Dim> plan, act, left;
  std::optional<Length> right_w;
};

struct LBBDTrace {
  std::vector<TraceEvent> events;  // in start order
  std::vector<FrontierSnapshot> frontiers;
  bool fallback = false;           // some block fell back to heuristics
};

struct ChildReport {
  DimFrontier frontier;
  std::vector<Dim> feasible;  // dims of every verified child layout
};

struct LBBDResult {
  Solution solution;
  LBBDTrace trace;
  std::map<std::string, ChildReport> children;
};

LBBDResult run_lbbd(const Instance& instance, const LBBDConfig& config);

}  // namespace hpack
