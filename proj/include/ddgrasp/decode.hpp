#pragma once

#include <optional>
#include <vector>

#include "ddgrasp/geometry.hpp"
#include "ddgrasp/maps.hpp"

namespace ddg {

struct KeyPoint {
  int row = 0;
  int col = 0;
  Point2 refined;          // input-image coordinates: (cell + offset) * stride
  double score = 0.0;
  double orientation = 0.0;  // fingertips only; atan2(sin, cos) at the cell
};

struct DecodeConfig {
  int top_k = 70;
  int stride = 4;
  double min_opening = 2.0;   // input pixels
  double max_opening = 70.0;
  double orientation_tolerance = kPi / 6.0;
  double center_radius_factor = 1.0 / 3.0;
  int nms_window = 3;          // odd, >= 1
  // Ablation switches for the two grouping filters.
  bool use_orientation_match = true;
  bool use_center_match = true;
};

struct GraspCandidate {
  DoubleDotGrasp grasp;
  KeyPoint tip1;
  KeyPoint tip2;
  std::optional<KeyPoint> center_used;
  double score = 0.0;  // sum of the point scores, in [0, 3]
};

// Top-k local maxima of a score map, refined by the offset channels.
// A cell survives non-maximum suppression if no neighbour in the window
// beats it; among equal plateau cells the first in row-major order wins.
// Returned descending by score (ties row-major). Throws on an empty map.
std::vector<KeyPoint> extract_peaks(const Grid& score, const Grid& offset_x,
                                    const Grid& offset_y, int k, int stride,
                                    int nms_window);

// True iff, for both fingertips, the predicted orientation deviates from the
// direction toward the pair midpoint by at most `tolerance`.
bool orientation_match(const KeyPoint& a, const KeyPoint& b, double tolerance);

// Highest-scoring center within radius_factor * opening of the pair
// midpoint, if any.
std::optional<KeyPoint> center_match(const KeyPoint& a, const KeyPoint& b,
                                     const std::vector<KeyPoint>& centers,
                                     double radius_factor);

// Full inference: peak extraction, pair grouping with opening bounds and the
// two matching filters, scoring and ranking (best first, stable tie-break by
// enumeration order).
std::vector<GraspCandidate> decode(const PredictionMaps& maps, const DecodeConfig& cfg);

}  // namespace ddg
