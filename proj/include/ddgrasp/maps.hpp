#pragma once

#include <array>

#include "ddgrasp/raster.hpp"

namespace ddg {

// The 8 raster channels shared by ground-truth targets and network
// predictions: two score heatmaps, two sub-cell offset pairs, and the
// sin/cos of the per-fingertip plate orientation.
struct GraspMaps {
  int stride = 1;
  Grid fingertip_score;
  Grid center_score;
  Grid fingertip_offset_x;
  Grid fingertip_offset_y;
  Grid center_offset_x;
  Grid center_offset_y;
  Grid sin_map;
  Grid cos_map;

  int rows() const { return fingertip_score.rows(); }
  int cols() const { return fingertip_score.cols(); }

  static GraspMaps zeros(int rows, int cols, int stride) {
    GraspMaps m;
    m.stride = stride;
    for (Grid* g : m.channels()) *g = Grid(rows, cols);
    return m;
  }

  // DDHM plane order.
  std::array<Grid*, 8> channels() {
    return {&fingertip_score, &center_score, &fingertip_offset_x,
            &fingertip_offset_y, &center_offset_x, &center_offset_y,
            &sin_map, &cos_map};
  }
  std::array<const Grid*, 8> channels() const {
    return {&fingertip_score, &center_score, &fingertip_offset_x,
            &fingertip_offset_y, &center_offset_x, &center_offset_y,
            &sin_map, &cos_map};
  }
};

using PredictionMaps = GraspMaps;

// Targets additionally carry masks of the cells where regression targets
// are defined (true-point cells only).
struct TargetMaps : GraspMaps {
  Mask fingertip_valid;
  Mask center_valid;
};

}  // namespace ddg
