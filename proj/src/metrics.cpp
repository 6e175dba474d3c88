#include "ddgrasp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ddgrasp/polygon.hpp"

namespace ddg {

double oriented_iou(const OrientedRect& a, const OrientedRect& b) {
  auto ca = rect_corners(a);
  auto cb = rect_corners(b);
  Polygon pa(ca.begin(), ca.end());
  Polygon pb(cb.begin(), cb.end());
  Polygon inter = clip_convex(pa, pb);
  if (inter.size() < 3) return 0.0;
  double ai = std::max(0.0, signed_area(inter));
  if (ai <= 0.0) return 0.0;
  double au = a.w * a.h + b.w * b.h - ai;
  return ai / au;
}

bool rectangle_match(const OrientedRect& pred, const std::vector<OrientedRect>& gts,
                     const RectMetricConfig& cfg) {
  if (gts.empty()) throw std::invalid_argument("rectangle_match: empty gt list");
  for (const OrientedRect& gt : gts) {
    if (oriented_iou(pred, gt) > cfg.iou_threshold &&
        axis_angle_diff(pred.theta, gt.theta) <= cfg.angle_threshold)
      return true;
  }
  return false;
}

DoubleDotError double_dot_error(const DoubleDotGrasp& pred, const DoubleDotGrasp& gt) {
  double direct = std::max(distance(pred.c1, gt.c1), distance(pred.c2, gt.c2));
  double swapped = std::max(distance(pred.c1, gt.c2), distance(pred.c2, gt.c1));
  DoubleDotError e;
  e.max_point_distance = std::min(direct, swapped);
  e.angle_error = axis_angle_diff(grasp_axis_angle(pred), grasp_axis_angle(gt));
  return e;
}

EvalReport evaluate(const std::map<std::string, std::optional<OrientedRect>>& preds,
                    const std::map<std::string, std::vector<OrientedRect>>& gts,
                    const RectMetricConfig& cfg) {
  EvalReport report;
  for (const auto& [id, gt_rects] : gts) {
    EvalReport::PerImage row;
    row.id = id;
    auto it = preds.find(id);
    if (it != preds.end() && it->second.has_value()) {
      row.has_pred = true;
      const OrientedRect& p = *it->second;
      row.matched = rectangle_match(p, gt_rects, cfg);
      for (const OrientedRect& gt : gt_rects) {
        double iou = oriented_iou(p, gt);
        if (iou > row.best_iou ||
            (iou == row.best_iou && row.best_iou == 0.0)) {
          row.best_iou = iou;
          row.angle_error = axis_angle_diff(p.theta, gt.theta);
        }
      }
    }
    report.rows.push_back(row);
    ++report.n_images;
    if (row.matched) ++report.n_success;
  }
  report.accuracy = report.n_images > 0
                        ? static_cast<double>(report.n_success) / report.n_images
                        : 0.0;
  return report;
}

}  // namespace ddg
