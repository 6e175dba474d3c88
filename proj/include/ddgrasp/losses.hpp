#pragma once

#include <utility>

#include "ddgrasp/maps.hpp"

namespace ddg {

struct FocalParams {
  double alpha = 2.0;  // exponent on the prediction term
  double beta = 4.0;   // exponent on the (1 - s) penalty reduction
  // Divide the focal sum by the number of s == 1 cells (at least 1).
  bool normalize_by_positives = false;
};

// Predicted scores are clamped into [kScoreEps, 1 - kScoreEps] before any
// log is taken.
inline constexpr double kScoreEps = 1e-7;

struct LossBreakdown {
  double l_det_con = 0.0;
  double l_det_cen = 0.0;
  double l_off_con = 0.0;
  double l_off_cen = 0.0;
  double l_ori_sin = 0.0;
  double l_ori_cos = 0.0;
  double total = 0.0;
};

// Gradients of total_loss w.r.t. every prediction channel.
struct LossGradients {
  Grid fingertip_score;
  Grid center_score;
  Grid fingertip_offset_x;
  Grid fingertip_offset_y;
  Grid center_offset_x;
  Grid center_offset_y;
  Grid sin_map;
  Grid cos_map;
};

double smooth_l1(double d);
double smooth_l1_grad(double d);

// Penalty-reduced focal loss over all cells. `pred` values must lie strictly
// inside (0, 1); use total_loss for the clamped entry point. Throws on shape
// mismatch.
double focal_loss(const Grid& pred, const Grid& target, const FocalParams& params);

// Smooth-L1 offset loss, summed over valid cells and both coordinates.
double offset_loss(const Grid& pred_x, const Grid& pred_y, const Grid& target_x,
                   const Grid& target_y, const Mask& valid);

// Smooth-L1 regression of sin and cos at valid fingertip cells; returns
// (l_sin, l_cos).
std::pair<double, double> orientation_loss(const Grid& pred_sin, const Grid& pred_cos,
                                           const Grid& target_sin, const Grid& target_cos,
                                           const Mask& valid);

// Unweighted sum of the six components. Score channels are clamped to
// [kScoreEps, 1 - kScoreEps] internally.
LossBreakdown total_loss(const PredictionMaps& pred, const TargetMaps& target,
                         const FocalParams& params);

LossGradients loss_gradients(const PredictionMaps& pred, const TargetMaps& target,
                             const FocalParams& params);

}  // namespace ddg
