#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ddgrasp/geometry.hpp"
#include "ddgrasp/polygon.hpp"

namespace ddg {

// Simple CCW polygon plus the seed that reproduces it.
struct PolygonScene {
  Polygon vertices;
  std::uint64_t seed = 0;
};

struct GripperModel {
  double min_opening = 2.0;    // input pixels
  double max_opening = 70.0;
  double plate_halfwidth = 5.0;
  double mu = 0.4;             // friction coefficient
};

struct SceneParams {
  int min_vertices = 6;
  int max_vertices = 9;
  double min_radius = 18.0;
  double max_radius = 30.0;
  double irregularity = 0.35;  // angular jitter, fraction of the mean spacing
  Point2 center{256.0, 256.0};
};

// Deterministic star-shaped polygon: sorted jittered angles, jittered
// radii. irregularity 0 with a fixed radius yields the regular polygon.
// Throws on degenerate parameter ranges.
PolygonScene generate_scene(std::uint64_t seed, const SceneParams& params);

enum class GraspFailure { none, collision, opening, no_contact, friction_cone };
const char* to_string(GraspFailure f);

struct GraspOutcome {
  bool success = false;
  GraspFailure reason = GraspFailure::none;
};

// Geometric adjudication of a grasp: fingertips must start outside the
// object, the opening must be executable, closing each fingertip toward the
// midpoint must reach the boundary, and both contacts must hold within the
// friction cone (deviation from the inward normal <= arctan mu). The reason
// reports the first violated condition.
GraspOutcome execute_grasp(const PolygonScene& scene, const DoubleDotGrasp& grasp,
                           const GripperModel& gripper);

// Antipodal grasps from opposing-edge pairs (normals opposing within
// 2*arctan mu), fingertips placed 1 px beyond the contacts. Every returned
// grasp passes execute_grasp.
std::vector<DoubleDotGrasp> gt_grasps(const PolygonScene& scene,
                                      const GripperModel& gripper);

struct TrialRecord {
  std::uint64_t seed = 0;
  bool had_grasp = false;
  bool success = false;
  GraspFailure reason = GraspFailure::none;
};

struct TrialStats {
  std::vector<TrialRecord> records;
  int n_success = 0;
  double rate() const {
    return records.empty() ? 0.0
                           : static_cast<double>(n_success) / records.size();
  }
};

using GraspPredictor =
    std::function<std::optional<DoubleDotGrasp>(const PolygonScene&)>;

// Execute the predictor's top grasp on every seed in [seed_begin, seed_end).
TrialStats run_trials(std::uint64_t seed_begin, std::uint64_t seed_end,
                      const GraspPredictor& predictor, const GripperModel& gripper,
                      const SceneParams& params);

}  // namespace ddg
