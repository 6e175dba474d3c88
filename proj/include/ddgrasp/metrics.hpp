#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddgrasp/geometry.hpp"

namespace ddg {

struct RectMetricConfig {
  double iou_threshold = 0.25;       // strict: IoU must exceed it
  double angle_threshold = kPi / 6;  // inclusive, on the acute mod-pi residual
};

struct EvalReport {
  struct PerImage {
    std::string id;
    bool has_pred = false;
    bool matched = false;
    double best_iou = 0.0;
    double angle_error = 0.0;
  };
  int n_images = 0;
  int n_success = 0;
  double accuracy = 0.0;
  std::vector<PerImage> rows;
};

// Exact oriented-rectangle IoU via convex polygon clipping and shoelace
// areas.
double oriented_iou(const OrientedRect& a, const OrientedRect& b);

// Rectangle metric: some gt with IoU > iou_threshold and acute angle
// difference <= angle_threshold. Throws on empty gts.
bool rectangle_match(const OrientedRect& pred, const std::vector<OrientedRect>& gts,
                     const RectMetricConfig& cfg);

struct DoubleDotError {
  double max_point_distance = 0.0;  // under the best fingertip assignment
  double angle_error = 0.0;         // axis difference, acute mod-pi residual
};
DoubleDotError double_dot_error(const DoubleDotGrasp& pred, const DoubleDotGrasp& gt);

// Per-image rectangle_match of the single top prediction; a missing
// prediction counts as a failure.
EvalReport evaluate(const std::map<std::string, std::optional<OrientedRect>>& preds,
                    const std::map<std::string, std::vector<OrientedRect>>& gts,
                    const RectMetricConfig& cfg);

}  // namespace ddg
