#include "ddgrasp/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ddg {

namespace {

void check_shape(const Grid& a, const Grid& b, const char* what) {
  if (!a.same_shape(b))
    throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

double clamp_score(double q) {
  return std::clamp(q, kScoreEps, 1.0 - kScoreEps);
}

Grid clamped(const Grid& g) {
  Grid out = g;
  for (double& v : out.data()) v = clamp_score(v);
  return out;
}

// d/dq of the per-cell focal term.
double focal_grad_cell(double q, double s, const FocalParams& p) {
  if (s == 1.0) {
    // -(1-q)^a log q
    return p.alpha * std::pow(1.0 - q, p.alpha - 1.0) * std::log(q) -
           std::pow(1.0 - q, p.alpha) / q;
  }
  // -(1-s)^b q^a log(1-q)
  double w = std::pow(1.0 - s, p.beta);
  return -w * (p.alpha * std::pow(q, p.alpha - 1.0) * std::log(1.0 - q) -
               std::pow(q, p.alpha) / (1.0 - q));
}

int positive_count(const Grid& target) {
  int n = 0;
  for (double s : target.data())
    if (s == 1.0) ++n;
  return std::max(n, 1);
}

}  // namespace

double smooth_l1(double d) {
  double a = std::fabs(d);
  return a < 1.0 ? 0.5 * d * d : a - 0.5;
}

double smooth_l1_grad(double d) {
  return std::fabs(d) < 1.0 ? d : (d > 0.0 ? 1.0 : -1.0);
}

double focal_loss(const Grid& pred, const Grid& target, const FocalParams& params) {
  check_shape(pred, target, "focal_loss");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.data().size(); ++i) {
    double q = pred.data()[i];
    double s = target.data()[i];
    if (s == 1.0)
      sum += std::pow(1.0 - q, params.alpha) * std::log(q);
    else
      sum += std::pow(1.0 - s, params.beta) * std::pow(q, params.alpha) *
             std::log(1.0 - q);
  }
  double loss = -sum;
  if (params.normalize_by_positives) loss /= positive_count(target);
  return loss;
}

double offset_loss(const Grid& pred_x, const Grid& pred_y, const Grid& target_x,
                   const Grid& target_y, const Mask& valid) {
  check_shape(pred_x, target_x, "offset_loss");
  check_shape(pred_y, target_y, "offset_loss");
  double sum = 0.0;
  for (int r = 0; r < pred_x.rows(); ++r)
    for (int c = 0; c < pred_x.cols(); ++c)
      if (valid.at(r, c)) {
        sum += smooth_l1(pred_x.at(r, c) - target_x.at(r, c));
        sum += smooth_l1(pred_y.at(r, c) - target_y.at(r, c));
      }
  return sum;
}

std::pair<double, double> orientation_loss(const Grid& pred_sin, const Grid& pred_cos,
                                           const Grid& target_sin, const Grid& target_cos,
                                           const Mask& valid) {
  check_shape(pred_sin, target_sin, "orientation_loss");
  check_shape(pred_cos, target_cos, "orientation_loss");
  double l_sin = 0.0, l_cos = 0.0;
  for (int r = 0; r < pred_sin.rows(); ++r)
    for (int c = 0; c < pred_sin.cols(); ++c)
      if (valid.at(r, c)) {
        l_sin += smooth_l1(pred_sin.at(r, c) - target_sin.at(r, c));
        l_cos += smooth_l1(pred_cos.at(r, c) - target_cos.at(r, c));
      }
  return {l_sin, l_cos};
}

LossBreakdown total_loss(const PredictionMaps& pred, const TargetMaps& target,
                         const FocalParams& params) {
  LossBreakdown out;
  out.l_det_con = focal_loss(clamped(pred.fingertip_score), target.fingertip_score, params);
  out.l_det_cen = focal_loss(clamped(pred.center_score), target.center_score, params);
  out.l_off_con = offset_loss(pred.fingertip_offset_x, pred.fingertip_offset_y,
                              target.fingertip_offset_x, target.fingertip_offset_y,
                              target.fingertip_valid);
  out.l_off_cen = offset_loss(pred.center_offset_x, pred.center_offset_y,
                              target.center_offset_x, target.center_offset_y,
                              target.center_valid);
  std::tie(out.l_ori_sin, out.l_ori_cos) =
      orientation_loss(pred.sin_map, pred.cos_map, target.sin_map, target.cos_map,
                       target.fingertip_valid);
  out.total = out.l_det_con + out.l_det_cen + out.l_off_con + out.l_off_cen +
              out.l_ori_sin + out.l_ori_cos;
  return out;
}

LossGradients loss_gradients(const PredictionMaps& pred, const TargetMaps& target,
                             const FocalParams& params) {
  LossGradients g;
  int h = pred.rows(), w = pred.cols();
  g.fingertip_score = Grid(h, w);
  g.center_score = Grid(h, w);
  g.fingertip_offset_x = Grid(h, w);
  g.fingertip_offset_y = Grid(h, w);
  g.center_offset_x = Grid(h, w);
  g.center_offset_y = Grid(h, w);
  g.sin_map = Grid(h, w);
  g.cos_map = Grid(h, w);

  double focal_norm_con = 1.0, focal_norm_cen = 1.0;
  if (params.normalize_by_positives) {
    focal_norm_con = 1.0 / positive_count(target.fingertip_score);
    focal_norm_cen = 1.0 / positive_count(target.center_score);
  }

  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      g.fingertip_score.at(r, c) =
          focal_norm_con * focal_grad_cell(clamp_score(pred.fingertip_score.at(r, c)),
                                           target.fingertip_score.at(r, c), params);
      g.center_score.at(r, c) =
          focal_norm_cen * focal_grad_cell(clamp_score(pred.center_score.at(r, c)),
                                           target.center_score.at(r, c), params);
      if (target.fingertip_valid.at(r, c)) {
        g.fingertip_offset_x.at(r, c) = smooth_l1_grad(
            pred.fingertip_offset_x.at(r, c) - target.fingertip_offset_x.at(r, c));
        g.fingertip_offset_y.at(r, c) = smooth_l1_grad(
            pred.fingertip_offset_y.at(r, c) - target.fingertip_offset_y.at(r, c));
        g.sin_map.at(r, c) = smooth_l1_grad(pred.sin_map.at(r, c) - target.sin_map.at(r, c));
        g.cos_map.at(r, c) = smooth_l1_grad(pred.cos_map.at(r, c) - target.cos_map.at(r, c));
      }
      if (target.center_valid.at(r, c)) {
        g.center_offset_x.at(r, c) = smooth_l1_grad(
            pred.center_offset_x.at(r, c) - target.center_offset_x.at(r, c));
        g.center_offset_y.at(r, c) = smooth_l1_grad(
            pred.center_offset_y.at(r, c) - target.center_offset_y.at(r, c));
      }
    }
  }
  return g;
}

}  // namespace ddg
