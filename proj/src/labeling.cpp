#include "ddgrasp/labeling.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ddg {

namespace {

struct EllipticalPeak {
  Point2 center;       // map coordinates
  Point2 axis;         // unit direction carrying sigma_x
  double sigma_x = 1.0;
  double sigma_y = 1.0;
};

double peak_amplitude(const EllipticalPeak& pk, const LabelConfig& cfg) {
  return cfg.peak_normalized ? 1.0 : 1.0 / (pk.sigma_x * pk.sigma_y);
}

double eval_peak(Point2 p, const EllipticalPeak& pk, const LabelConfig& cfg) {
  Point2 q = p - pk.center;
  double qx = dot(q, pk.axis);
  double qy = cross(pk.axis, q);
  double k = cfg.half_exponent ? 0.5 : 1.0;
  double e = qx * qx / (pk.sigma_x * pk.sigma_x) + qy * qy / (pk.sigma_y * pk.sigma_y);
  return peak_amplitude(pk, cfg) * std::exp(-k * e);
}

Grid render_score(const std::vector<EllipticalPeak>& peaks, const LabelConfig& cfg) {
  Grid out(cfg.map_height, cfg.map_width);
  for (int r = 0; r < cfg.map_height; ++r) {
    for (int c = 0; c < cfg.map_width; ++c) {
      double s = 0.0;
      for (const auto& pk : peaks)
        s += eval_peak({static_cast<double>(c), static_cast<double>(r)}, pk, cfg);
      out.at(r, c) = std::min(1.0, s);
    }
  }
  return out;
}

// Nearest-true-point claim on a contested cell; ties keep the earlier grasp.
struct CellClaim {
  Grid best_dist;
  explicit CellClaim(const LabelConfig& cfg)
      : best_dist(cfg.map_height, cfg.map_width,
                  std::numeric_limits<double>::infinity()) {}
  bool claim(int row, int col, double dist) {
    if (dist < best_dist.at(row, col)) {
      best_dist.at(row, col) = dist;
      return true;
    }
    return false;
  }
};

}  // namespace

double gaussian_score_at(Point2 p, const std::vector<LabeledGrasp>& grasps,
                         const LabelConfig& cfg) {
  double s = 0.0;
  for (const auto& lg : grasps) {
    if (lg.jaw <= 0.0)
      throw std::invalid_argument("gaussian_score_at: non-positive jaw");
    Point2 axis = normalized(lg.grasp.c2 - lg.grasp.c1);
    for (Point2 tip : {lg.grasp.c1, lg.grasp.c2}) {
      EllipticalPeak pk{tip, axis, cfg.sigma_x, cfg.sigma_y_factor * lg.jaw};
      s += eval_peak(p, pk, cfg);
    }
  }
  return std::min(1.0, s);
}

TargetMaps render_targets(const std::vector<OrientedRect>& rects,
                          const LabelConfig& cfg) {
  if (cfg.map_height <= 0 || cfg.map_width <= 0 || cfg.stride < 1)
    throw std::invalid_argument("render_targets: bad map config");

  TargetMaps out;
  static_cast<GraspMaps&>(out) = GraspMaps::zeros(cfg.map_height, cfg.map_width, cfg.stride);
  out.fingertip_valid = Mask(cfg.map_height, cfg.map_width);
  out.center_valid = Mask(cfg.map_height, cfg.map_width);

  const double n = static_cast<double>(cfg.stride);
  auto cell_of = [&](Point2 map_p, std::size_t grasp_idx) {
    int col = static_cast<int>(std::floor(map_p.x));
    int row = static_cast<int>(std::floor(map_p.y));
    if (col < 0 || col >= cfg.map_width || row < 0 || row >= cfg.map_height)
      throw std::invalid_argument("render_targets: grasp " +
                                  std::to_string(grasp_idx) +
                                  " falls outside the map");
    return std::pair<int, int>{row, col};
  };

  std::vector<EllipticalPeak> tip_peaks;
  std::vector<EllipticalPeak> center_peaks;
  CellClaim tip_claim(cfg);
  CellClaim center_claim(cfg);

  for (std::size_t gi = 0; gi < rects.size(); ++gi) {
    const OrientedRect& rect = rects[gi];
    if (rect.w <= 0.0 || rect.h <= 0.0)
      throw std::invalid_argument("render_targets: grasp " + std::to_string(gi) +
                                  " has non-positive extent");
    DoubleDotGrasp g = rect_to_grasp(rect);
    Point2 axis = normalized(g.c2 - g.c1);
    Point2 map_center{rect.center.x / n, rect.center.y / n};
    double jaw_cells = rect.h / n;

    for (Point2 tip : {g.c1, g.c2}) {
      Point2 map_tip{tip.x / n, tip.y / n};
      auto [row, col] = cell_of(map_tip, gi);
      Point2 cell{static_cast<double>(col), static_cast<double>(row)};
      tip_peaks.push_back({cell, axis, cfg.sigma_x, cfg.sigma_y_factor * jaw_cells});
      double d = distance(map_tip, cell);
      if (tip_claim.claim(row, col, d)) {
        out.fingertip_offset_x.at(row, col) = map_tip.x - cell.x;
        out.fingertip_offset_y.at(row, col) = map_tip.y - cell.y;
        double ori = fingertip_orientation(tip, rect.center);
        out.sin_map.at(row, col) = std::sin(ori);
        out.cos_map.at(row, col) = std::cos(ori);
        out.fingertip_valid.set(row, col, true);
      }
    }

    auto [crow, ccol] = cell_of(map_center, gi);
    Point2 ccell{static_cast<double>(ccol), static_cast<double>(crow)};
    center_peaks.push_back({ccell, {1.0, 0.0}, cfg.sigma_x, cfg.sigma_x});
    double cd = distance(map_center, ccell);
    if (center_claim.claim(crow, ccol, cd)) {
      out.center_offset_x.at(crow, ccol) = map_center.x - ccell.x;
      out.center_offset_y.at(crow, ccol) = map_center.y - ccell.y;
      out.center_valid.set(crow, ccol, true);
    }
  }

  out.fingertip_score = render_score(tip_peaks, cfg);
  out.center_score = render_score(center_peaks, cfg);
  return out;
}

}  // namespace ddg
