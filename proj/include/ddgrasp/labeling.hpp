#pragma once

#include <vector>

#include "ddgrasp/geometry.hpp"
#include "ddgrasp/maps.hpp"

namespace ddg {

struct LabelConfig {
  int map_height = 128;
  int map_width = 128;
  int stride = 4;              // input pixels per map cell
  double sigma_x = 1.0;        // along the grasp axis, in map cells
  double sigma_y_factor = 0.75;  // sigma_y = factor * jaw, along the plate
  // With peak_normalized the Gaussian amplitude is 1 so true-point cells
  // score exactly 1; the literal 1/(sigma_x*sigma_y) amplitude stays
  // available behind the flag.
  bool peak_normalized = true;
  // The printed exponent has no 1/2 factor; half_exponent restores it.
  bool half_exponent = false;
};

// A grasp plus its jaw size, in map coordinates.
struct LabeledGrasp {
  DoubleDotGrasp grasp;
  double jaw = 0.0;
};

// Anisotropic-Gaussian fingertip score at p: sum over all fingertips of all
// grasps, clamped at 1. sigma_x lies along the grasp axis, sigma_y along the
// plate. Throws on non-positive jaw.
double gaussian_score_at(Point2 p, const std::vector<LabeledGrasp>& grasps,
                         const LabelConfig& cfg);

// Render the full 8-channel target raster (plus validity masks) from
// rectangle annotations in input-image coordinates. Gaussians are centered
// on the integer cell of each true point so GT cells score exactly 1; the
// offset channels carry the sub-cell fraction. Throws if any annotation,
// divided by the stride, falls outside the map (the message names the
// grasp index).
TargetMaps render_targets(const std::vector<OrientedRect>& rects,
                          const LabelConfig& cfg);

}  // namespace ddg
