#include "ddgrasp/decode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ddg {

std::vector<KeyPoint> extract_peaks(const Grid& score, const Grid& offset_x,
                                    const Grid& offset_y, int k, int stride,
                                    int nms_window) {
  if (score.empty()) throw std::invalid_argument("extract_peaks: empty score map");
  if (k < 1) throw std::invalid_argument("extract_peaks: k must be >= 1");
  if (nms_window < 1 || nms_window % 2 == 0)
    throw std::invalid_argument("extract_peaks: nms_window must be odd and >= 1");

  const int half = nms_window / 2;
  std::vector<KeyPoint> peaks;
  for (int r = 0; r < score.rows(); ++r) {
    for (int c = 0; c < score.cols(); ++c) {
      double v = score.at(r, c);
      if (v <= 0.0) continue;
      bool is_peak = true;
      for (int dr = -half; dr <= half && is_peak; ++dr) {
        for (int dc = -half; dc <= half; ++dc) {
          if (dr == 0 && dc == 0) continue;
          int nr = r + dr, nc = c + dc;
          if (nr < 0 || nr >= score.rows() || nc < 0 || nc >= score.cols()) continue;
          double nv = score.at(nr, nc);
          // plateau: the first cell in row-major order keeps the peak
          if (nv > v || (nv == v && (dr < 0 || (dr == 0 && dc < 0)))) {
            is_peak = false;
            break;
          }
        }
      }
      if (!is_peak) continue;
      KeyPoint kp;
      kp.row = r;
      kp.col = c;
      kp.score = v;
      kp.refined = {(c + offset_x.at(r, c)) * stride, (r + offset_y.at(r, c)) * stride};
      peaks.push_back(kp);
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const KeyPoint& a, const KeyPoint& b) { return a.score > b.score; });
  if (static_cast<int>(peaks.size()) > k) peaks.resize(k);
  return peaks;
}

bool orientation_match(const KeyPoint& a, const KeyPoint& b, double tolerance) {
  Point2 mid = midpoint(a.refined, b.refined);
  for (const KeyPoint* kp : {&a, &b}) {
    double toward_mid = std::atan2(mid.y - kp->refined.y, mid.x - kp->refined.x);
    if (angle_diff(kp->orientation, toward_mid) > tolerance) return false;
  }
  return true;
}

std::optional<KeyPoint> center_match(const KeyPoint& a, const KeyPoint& b,
                                     const std::vector<KeyPoint>& centers,
                                     double radius_factor) {
  Point2 mid = midpoint(a.refined, b.refined);
  double radius = radius_factor * distance(a.refined, b.refined);
  std::optional<KeyPoint> best;
  for (const KeyPoint& c : centers) {
    if (distance(c.refined, mid) > radius) continue;
    if (!best || c.score > best->score) best = c;
  }
  return best;
}

std::vector<GraspCandidate> decode(const PredictionMaps& maps, const DecodeConfig& cfg) {
  auto tips = extract_peaks(maps.fingertip_score, maps.fingertip_offset_x,
                            maps.fingertip_offset_y, cfg.top_k, cfg.stride,
                            cfg.nms_window);
  for (KeyPoint& t : tips)
    t.orientation = std::atan2(maps.sin_map.at(t.row, t.col), maps.cos_map.at(t.row, t.col));

  std::vector<KeyPoint> centers;
  if (cfg.use_center_match)
    centers = extract_peaks(maps.center_score, maps.center_offset_x,
                            maps.center_offset_y, cfg.top_k, cfg.stride,
                            cfg.nms_window);

  std::vector<GraspCandidate> out;
  for (std::size_t i = 0; i < tips.size(); ++i) {
    for (std::size_t j = i + 1; j < tips.size(); ++j) {
      double opening = distance(tips[i].refined, tips[j].refined);
      if (opening < cfg.min_opening || opening > cfg.max_opening) continue;
      if (cfg.use_orientation_match &&
          !orientation_match(tips[i], tips[j], cfg.orientation_tolerance))
        continue;
      std::optional<KeyPoint> ctr;
      if (cfg.use_center_match) {
        ctr = center_match(tips[i], tips[j], centers, cfg.center_radius_factor);
        if (!ctr) continue;
      }
      GraspCandidate cand;
      cand.grasp = {tips[i].refined, tips[j].refined};
      cand.tip1 = tips[i];
      cand.tip2 = tips[j];
      cand.center_used = ctr;
      cand.score = tips[i].score + tips[j].score + (ctr ? ctr->score : 0.0);
      out.push_back(cand);
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const GraspCandidate& a, const GraspCandidate& b) {
                     return a.score > b.score;
                   });
  return out;
}

}  // namespace ddg
