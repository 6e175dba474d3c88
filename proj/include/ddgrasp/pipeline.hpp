#pragma once

#include <cstdint>
#include <vector>

#include "ddgrasp/decode.hpp"
#include "ddgrasp/labeling.hpp"
#include "ddgrasp/metrics.hpp"
#include "ddgrasp/sim.hpp"

namespace ddg {

// One-shot self-verification: generate a scene, derive gt grasps, render
// targets, decode them back, and execute the decoded grasp in the
// simulator.
struct RoundtripConfig {
  std::uint64_t seed_begin = 0;
  std::uint64_t seed_end = 100;  // exclusive
  SceneParams scene;
  GripperModel gripper;
  int map_size = 128;
  int stride = 4;
  double plate_h = 10.0;
  // gt grasps rendered per scene; kept well separated so heatmap modes do
  // not merge
  int max_rendered = 1;
  double min_separation = 12.0;  // input px between rendered keypoints
  DecodeConfig decode;
  double recover_tolerance = 1.0;  // px, max fingertip error
  RectMetricConfig metric;
};

struct SeedOutcome {
  std::uint64_t seed = 0;
  bool has_gt = false;
  bool decoded = false;
  bool recovered = false;     // fingertip error <= tolerance vs a rendered gt
  bool rect_matched = false;  // rectangle metric vs the rendered gts
  bool sim_success = false;
  double fingertip_error = 0.0;
  GraspFailure sim_reason = GraspFailure::none;
};

struct RoundtripReport {
  std::vector<SeedOutcome> seeds;
  int n_recovered = 0;
  int n_rect_matched = 0;
  int n_sim_success = 0;
  double recovery_rate() const {
    return seeds.empty() ? 0.0 : static_cast<double>(n_recovered) / seeds.size();
  }
  double sim_rate() const {
    return seeds.empty() ? 0.0 : static_cast<double>(n_sim_success) / seeds.size();
  }
};

// Subset of grasps whose fingertips and midpoints are pairwise at least
// min_separation apart, greedily in input order, at most max_n grasps.
std::vector<DoubleDotGrasp> select_separated(const std::vector<DoubleDotGrasp>& grasps,
                                             int max_n, double min_separation);

RoundtripReport run_roundtrip(const RoundtripConfig& cfg);

}  // namespace ddg
