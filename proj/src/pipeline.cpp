#include "ddgrasp/pipeline.hpp"

#include <algorithm>
#include <limits>

namespace ddg {

std::vector<DoubleDotGrasp> select_separated(const std::vector<DoubleDotGrasp>& grasps,
                                             int max_n, double min_separation) {
  std::vector<DoubleDotGrasp> kept;
  std::vector<Point2> keypoints;
  for (const DoubleDotGrasp& g : grasps) {
    if (static_cast<int>(kept.size()) >= max_n) break;
    Point2 pts[3] = {g.c1, g.c2, midpoint(g.c1, g.c2)};
    bool ok = true;
    for (const Point2& p : pts)
      for (const Point2& q : keypoints)
        if (distance(p, q) < min_separation) ok = false;
    if (!ok) continue;
    kept.push_back(g);
    keypoints.insert(keypoints.end(), pts, pts + 3);
  }
  return kept;
}

RoundtripReport run_roundtrip(const RoundtripConfig& cfg) {
  if (cfg.seed_end <= cfg.seed_begin)
    throw std::invalid_argument("run_roundtrip: empty seed range");

  LabelConfig label_cfg;
  label_cfg.map_height = cfg.map_size;
  label_cfg.map_width = cfg.map_size;
  label_cfg.stride = cfg.stride;

  DecodeConfig decode_cfg = cfg.decode;
  decode_cfg.stride = cfg.stride;

  RoundtripReport report;
  for (std::uint64_t seed = cfg.seed_begin; seed < cfg.seed_end; ++seed) {
    SeedOutcome o;
    o.seed = seed;
    PolygonScene scene = generate_scene(seed, cfg.scene);
    auto gts = gt_grasps(scene, cfg.gripper);
    o.has_gt = !gts.empty();
    if (o.has_gt) {
      auto rendered = select_separated(gts, cfg.max_rendered, cfg.min_separation);
      std::vector<OrientedRect> rects;
      for (const auto& g : rendered) rects.push_back(grasp_to_rect(g, cfg.plate_h));

      TargetMaps maps = render_targets(rects, label_cfg);
      auto candidates = decode(maps, decode_cfg);
      if (!candidates.empty()) {
        o.decoded = true;
        const DoubleDotGrasp& best = candidates.front().grasp;
        double err = std::numeric_limits<double>::infinity();
        for (const auto& g : rendered)
          err = std::min(err, double_dot_error(best, g).max_point_distance);
        o.fingertip_error = err;
        o.recovered = err <= cfg.recover_tolerance;
        if (o.recovered)
          o.rect_matched =
              rectangle_match(grasp_to_rect(best, cfg.plate_h), rects, cfg.metric);
        GraspOutcome so = execute_grasp(scene, best, cfg.gripper);
        o.sim_success = so.success;
        o.sim_reason = so.reason;
      }
    }
    if (o.recovered) ++report.n_recovered;
    if (o.rect_matched) ++report.n_rect_matched;
    if (o.sim_success) ++report.n_sim_success;
    report.seeds.push_back(o);
  }
  return report;
}

}  // namespace ddg
