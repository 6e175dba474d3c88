// Acceptance suite: one PASS/FAIL line per criterion; exits nonzero if any
// criterion fails. Each check is self-contained and deterministic.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "ddgrasp/decode.hpp"
#include "ddgrasp/io.hpp"
#include "ddgrasp/labeling.hpp"
#include "ddgrasp/losses.hpp"
#include "ddgrasp/metrics.hpp"
#include "ddgrasp/pipeline.hpp"
#include "ddgrasp/polygon.hpp"
#include "ddgrasp/sim.hpp"

using namespace ddg;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool ok, const std::string& detail) {
  std::printf("criterion %d [%s] %s%s%s\n", idx, ok ? "PASS" : "FAIL", name,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

double uniform(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }
double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform(rng);
}

// ---------------------------------------------------------------- criterion 1
void criterion_roundtrip() {
  auto t0 = std::chrono::steady_clock::now();
  RoundtripConfig cfg;
  cfg.seed_begin = 0;
  cfg.seed_end = 500;
  RoundtripReport rep = run_roundtrip(cfg);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  bool all_rect = true;
  for (const auto& o : rep.seeds)
    if (o.recovered && !o.rect_matched) all_rect = false;
  bool ok = rep.recovery_rate() >= 0.99 && all_rect && secs <= 30.0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "recovery %.4f (>=0.99), recovered-and-rect-matched %s, %.1fs (<=30s)",
                rep.recovery_rate(), all_rect ? "all" : "VIOLATED", secs);
  report(1, "oracle roundtrip, 500 seeds", ok, buf);
}

// ---------------------------------------------------------------- criterion 2
// Synthetic two-object scenes with injected distractor fingertip peaks.
// Ground truth: one grasp per object, rendered through the real labeler so
// offsets and orientations are exact. Distractors: per object, 3 peaks with
// random orientations plus one planted pair that is orientation-consistent
// about an off-center midpoint (passes orientation matching, fails center
// matching). Ten injected peaks per scene in total.
struct AblationScene {
  TargetMaps maps;
  std::vector<DoubleDotGrasp> gts;
};

AblationScene make_ablation_scene(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 1);
  LabelConfig lc;  // 128x128 map, stride 4 -> 512px input frame

  std::vector<OrientedRect> rects;
  std::vector<Point2> obj_centers;
  for (Point2 base : {Point2{100, 100}, Point2{400, 400}}) {
    OrientedRect r;
    r.center = {base.x + uniform(rng, -20, 20), base.y + uniform(rng, -20, 20)};
    r.theta = uniform(rng, 0, kPi);
    r.w = 40;
    r.h = 10;
    rects.push_back(r);
    obj_centers.push_back(r.center);
  }

  AblationScene out{render_targets(rects, lc), {}};
  for (const auto& r : rects) out.gts.push_back(rect_to_grasp(r));

  Grid& score = out.maps.fingertip_score;
  Grid& smap = out.maps.sin_map;
  Grid& cmap = out.maps.cos_map;
  std::vector<std::pair<int, int>> taken;  // cells holding exact-1 peaks
  for (const auto& g : out.gts)
    for (Point2 tip : {g.c1, g.c2})
      taken.push_back({static_cast<int>(std::floor(tip.y / lc.stride)),
                       static_cast<int>(std::floor(tip.x / lc.stride))});

  auto cell_free = [&](int row, int col) {
    if (row < 1 || col < 1 || row >= score.rows() - 1 || col >= score.cols() - 1)
      return false;
    for (auto [r, c] : taken)
      if (std::abs(r - row) <= 2 && std::abs(c - col) <= 2) return false;
    return true;
  };
  auto inject = [&](Point2 pos, double orientation) {
    int row = static_cast<int>(std::floor(pos.y / lc.stride));
    int col = static_cast<int>(std::floor(pos.x / lc.stride));
    if (!cell_free(row, col)) return false;
    score.at(row, col) = 1.0;
    smap.at(row, col) = std::sin(orientation);
    cmap.at(row, col) = std::cos(orientation);
    out.maps.fingertip_offset_x.at(row, col) = 0.0;
    out.maps.fingertip_offset_y.at(row, col) = 0.0;
    taken.push_back({row, col});
    return true;
  };
  auto snapped = [&](Point2 pos) {
    return Point2{std::floor(pos.x / lc.stride) * lc.stride,
                  std::floor(pos.y / lc.stride) * lc.stride};
  };

  for (Point2 oc : obj_centers) {
    // 3 randomly oriented distractors in an annulus around the object
    for (int k = 0; k < 3;) {
      double phi = uniform(rng, 0, 2 * kPi);
      double r = uniform(rng, 14, 26);
      Point2 p{oc.x + r * std::cos(phi), oc.y + r * std::sin(phi)};
      if (inject(p, uniform(rng, 0, 2 * kPi))) ++k;
    }
    // planted orientation-consistent pair about an off-center midpoint
    for (;;) {
      double psi = uniform(rng, 0, 2 * kPi);
      Point2 mid{oc.x + 24 * std::cos(psi), oc.y + 24 * std::sin(psi)};
      double axis = uniform(rng, 0, 2 * kPi);
      Point2 a = snapped({mid.x + 15 * std::cos(axis), mid.y + 15 * std::sin(axis)});
      Point2 b = snapped({mid.x - 15 * std::cos(axis), mid.y - 15 * std::sin(axis)});
      Point2 m = midpoint(a, b);
      // the pair must keep failing center matching after cell snapping
      double open = distance(a, b);
      if (open < 20 || open > 40) continue;
      bool far = true;
      for (Point2 c : obj_centers)
        if (distance(m, c) < open / 3.0 + 4.0) far = false;
      if (!far) continue;
      int ra = static_cast<int>(a.y / 4), ca = static_cast<int>(a.x / 4);
      int rb = static_cast<int>(b.y / 4), cb = static_cast<int>(b.x / 4);
      if (!cell_free(ra, ca) || !cell_free(rb, cb)) continue;
      if (std::abs(ra - rb) <= 2 && std::abs(ca - cb) <= 2) continue;
      inject(a, std::atan2(m.y - a.y, m.x - a.x));
      inject(b, std::atan2(m.y - b.y, m.x - b.x));
      break;
    }
  }
  return out;
}

void criterion_ablation() {
  const int n_scenes = 200;
  DecodeConfig base;
  struct Variant {
    const char* name;
    bool ori, cen;
    int hits = 0;
  } variants[4] = {{"none", false, false},
                   {"center", false, true},
                   {"orientation", true, false},
                   {"both", true, true}};

  for (int s = 0; s < n_scenes; ++s) {
    AblationScene scene = make_ablation_scene(static_cast<std::uint64_t>(s));
    for (auto& v : variants) {
      DecodeConfig cfg = base;
      cfg.use_orientation_match = v.ori;
      cfg.use_center_match = v.cen;
      auto cands = decode(scene.maps, cfg);
      if (cands.empty()) continue;
      double best = 1e9;
      for (const auto& gt : scene.gts)
        best = std::min(best, double_dot_error(cands.front().grasp, gt).max_point_distance);
      if (best <= 2.0) ++v.hits;
    }
  }

  double r[4];
  for (int i = 0; i < 4; ++i) r[i] = variants[i].hits / double(n_scenes);
  bool ordered = r[0] < r[1] && r[1] < r[2] && r[2] < r[3];
  bool ori_dominant = (r[2] - r[0]) > (r[1] - r[0]);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "none %.3f < center %.3f < orientation %.3f < both %.3f; "
                "orientation gain %.3f vs center gain %.3f",
                r[0], r[1], r[2], r[3], r[2] - r[0], r[1] - r[0]);
  report(2, "filter-ablation ordering, 200 scenes", ordered && ori_dominant, buf);
}

// ---------------------------------------------------------------- criterion 3
double mc_iou(const OrientedRect& a, const OrientedRect& b, std::mt19937_64& rng) {
  auto ca = rect_corners(a), cb = rect_corners(b);
  Polygon pa(ca.begin(), ca.end()), pb(cb.begin(), cb.end());
  double lo_x = 1e18, lo_y = 1e18, hi_x = -1e18, hi_y = -1e18;
  for (const Polygon* p : {&pa, &pb})
    for (const Point2& v : *p) {
      lo_x = std::min(lo_x, v.x);
      lo_y = std::min(lo_y, v.y);
      hi_x = std::max(hi_x, v.x);
      hi_y = std::max(hi_y, v.y);
    }
  // jittered stratified grid, ~1e5 samples over the joint bounding box
  const int n = 316;
  long inter = 0, uni = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Point2 p{lo_x + (hi_x - lo_x) * (i + uniform(rng)) / n,
               lo_y + (hi_y - lo_y) * (j + uniform(rng)) / n};
      bool ia = point_in_polygon(p, pa), ib = point_in_polygon(p, pb);
      inter += ia && ib;
      uni += ia || ib;
    }
  return uni == 0 ? 0.0 : double(inter) / double(uni);
}

void criterion_iou() {
  std::mt19937_64 rng(17);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    auto rect = [&]() {
      OrientedRect r;
      r.center = {uniform(rng, -10, 10), uniform(rng, -10, 10)};
      r.theta = uniform(rng, 0, kPi);
      r.w = uniform(rng, 2, 20);
      r.h = uniform(rng, 2, 20);
      return r;
    };
    OrientedRect a = rect(), b = rect();
    worst = std::max(worst, std::abs(oriented_iou(a, b) - mc_iou(a, b, rng)));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max |exact - monte-carlo| = %.5f (<=0.01)", worst);
  report(3, "IoU oracle equivalence, 1000 pairs", worst <= 0.01, buf);
}

// ---------------------------------------------------------------- criterion 4
void random_maps(std::mt19937_64& rng, PredictionMaps& pred, TargetMaps& target) {
  const int n = 8;
  pred = PredictionMaps::zeros(n, n, 4);
  static_cast<GraspMaps&>(target) = GraspMaps::zeros(n, n, 4);
  target.fingertip_valid = Mask(n, n);
  target.center_valid = Mask(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      pred.fingertip_score.at(r, c) = uniform(rng, 0.05, 0.95);
      pred.center_score.at(r, c) = uniform(rng, 0.05, 0.95);
      // a sprinkle of exact positives exercises the focal positive branch
      target.fingertip_score.at(r, c) = uniform(rng) < 0.1 ? 1.0 : uniform(rng, 0, 0.9);
      target.center_score.at(r, c) = uniform(rng) < 0.1 ? 1.0 : uniform(rng, 0, 0.9);
      pred.fingertip_offset_x.at(r, c) = uniform(rng);
      pred.fingertip_offset_y.at(r, c) = uniform(rng);
      pred.center_offset_x.at(r, c) = uniform(rng);
      pred.center_offset_y.at(r, c) = uniform(rng);
      pred.sin_map.at(r, c) = uniform(rng, -1, 1);
      pred.cos_map.at(r, c) = uniform(rng, -1, 1);
      target.fingertip_offset_x.at(r, c) = uniform(rng);
      target.fingertip_offset_y.at(r, c) = uniform(rng);
      target.center_offset_x.at(r, c) = uniform(rng);
      target.center_offset_y.at(r, c) = uniform(rng);
      double th = uniform(rng, 0, 2 * kPi);
      target.sin_map.at(r, c) = std::sin(th);
      target.cos_map.at(r, c) = std::cos(th);
      target.fingertip_valid.set(r, c, uniform(rng) < 0.3);
      target.center_valid.set(r, c, uniform(rng) < 0.3);
    }
}

void criterion_gradients() {
  std::mt19937_64 rng(23);
  FocalParams fp;
  const double step = 1e-5;
  double worst = 0.0;
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    PredictionMaps pred;
    TargetMaps target;
    random_maps(rng, pred, target);
    LossGradients an = loss_gradients(pred, target, fp);

    std::pair<Grid*, Grid*> channels[8] = {
        {&pred.fingertip_score, &an.fingertip_score},
        {&pred.center_score, &an.center_score},
        {&pred.fingertip_offset_x, &an.fingertip_offset_x},
        {&pred.fingertip_offset_y, &an.fingertip_offset_y},
        {&pred.center_offset_x, &an.center_offset_x},
        {&pred.center_offset_y, &an.center_offset_y},
        {&pred.sin_map, &an.sin_map},
        {&pred.cos_map, &an.cos_map}};
    // probe a fixed handful of cells per channel to keep the run quick
    for (auto [grid, grad] : channels)
      for (int probe = 0; probe < 6; ++probe) {
        int r = static_cast<int>(uniform(rng, 0, 8));
        int c = static_cast<int>(uniform(rng, 0, 8));
        double saved = grid->at(r, c);
        // skip the smooth-L1 knee neighbourhood: the second derivative jumps
        // there and finite differences straddle it
        bool near_knee = false;
        for (Grid* t : {&target.fingertip_offset_x, &target.fingertip_offset_y,
                        &target.center_offset_x, &target.center_offset_y,
                        &target.sin_map, &target.cos_map}) {
          double d = std::abs(saved - t->at(r, c));
          if (std::abs(d - 1.0) < 1e-3) near_knee = true;
        }
        if (near_knee) continue;
        grid->at(r, c) = saved + step;
        double up = total_loss(pred, target, fp).total;
        grid->at(r, c) = saved - step;
        double dn = total_loss(pred, target, fp).total;
        grid->at(r, c) = saved;
        double fd = (up - dn) / (2 * step);
        double a = grad->at(r, c);
        double rel = std::abs(a - fd) / std::max(1.0, std::max(std::abs(a), std::abs(fd)));
        worst = std::max(worst, rel);
        ++checked;
      }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d probes, worst relative error %.2e (<=1e-4)",
                checked, worst);
  report(4, "analytic vs finite-difference gradients", worst <= 1e-4, buf);
}

// ---------------------------------------------------------------- criterion 5
void criterion_hand_values() {
  bool ok = true;
  std::string detail;
  auto expect = [&](const char* what, double got, double want) {
    if (std::abs(got - want) > 1e-6) {
      ok = false;
      char buf[96];
      std::snprintf(buf, sizeof buf, "%s: got %.7f want %.7f; ", what, got, want);
      detail += buf;
    }
  };

  FocalParams fp;
  Grid p1(1, 1), t1(1, 1);
  p1.at(0, 0) = 0.5;
  t1.at(0, 0) = 1.0;
  expect("focal positive", focal_loss(p1, t1, fp), 0.173287);
  t1.at(0, 0) = 0.0;
  expect("focal negative", focal_loss(p1, t1, fp), 0.173287);

  expect("smooth_l1(0)", smooth_l1(0.0), 0.0);
  expect("smooth_l1(0.5)", smooth_l1(0.5), 0.125);
  expect("smooth_l1(2)", smooth_l1(2.0), 1.5);

  // fingertip at input pixel (10, 7), stride 4 -> cell (row 1, col 2),
  // offset (0.5, 0.75)
  DoubleDotGrasp g{{10, 7}, {50, 7}};
  TargetMaps maps = render_targets({grasp_to_rect(g, 8.0)}, LabelConfig{});
  expect("offset_x(10/4)", maps.fingertip_offset_x.at(1, 2), 0.5);
  expect("offset_y(7/4)", maps.fingertip_offset_y.at(1, 2), 0.75);
  expect("peak score", maps.fingertip_score.at(1, 2), 1.0);

  report(5, "hand-value fixtures", ok, ok ? "all exact to 1e-6" : detail);
}

// ---------------------------------------------------------------- criterion 6
void criterion_simulator() {
  GripperModel gripper;
  SceneParams params;
  int violations = 0, scenes_with_grasps = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    PolygonScene scene = generate_scene(s, params);
    auto gts = gt_grasps(scene, gripper);
    if (!gts.empty()) ++scenes_with_grasps;
    for (const auto& g : gts)
      if (!execute_grasp(scene, g, gripper).success) ++violations;
  }

  std::mt19937_64 rng(41);
  int mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    PolygonScene scene = generate_scene(rng() % 1000, params);
    DoubleDotGrasp g;
    auto gts = gt_grasps(scene, gripper);
    if (t % 2 == 0 && !gts.empty()) {
      g = gts[rng() % gts.size()];
    } else {  // random grasp; failures must be preserved too
      double phi = uniform(rng, 0, 2 * kPi);
      double r1 = uniform(rng, 10, 50), r2 = uniform(rng, 10, 50);
      g.c1 = {params.center.x + r1 * std::cos(phi), params.center.y + r1 * std::sin(phi)};
      g.c2 = {params.center.x - r2 * std::cos(phi), params.center.y - r2 * std::sin(phi)};
    }
    double ang = uniform(rng, 0, 2 * kPi);
    Point2 shift{uniform(rng, -100, 100), uniform(rng, -100, 100)};
    Rotation2 rot(ang);
    auto xf = [&](Point2 p) { return rot.apply(p) + shift; };
    PolygonScene moved{Polygon{}, scene.seed};
    for (const Point2& v : scene.vertices) moved.vertices.push_back(xf(v));
    DoubleDotGrasp gm{xf(g.c1), xf(g.c2)};
    GraspOutcome a = execute_grasp(scene, g, gripper);
    GraspOutcome b = execute_grasp(moved, gm, gripper);
    if (a.success != b.success || a.reason != b.reason) ++mismatches;
  }

  char buf[140];
  std::snprintf(buf, sizeof buf,
                "gt violations %d/1000 scenes (%d with grasps), rigid mismatches %d/1000",
                violations, scenes_with_grasps, mismatches);
  report(6, "simulator consistency", violations == 0 && mismatches == 0, buf);
}

// ---------------------------------------------------------------- criterion 7
void criterion_formats() {
  bool ok = true;
  std::string detail;

  std::mt19937_64 rng(7);
  GraspMaps maps = GraspMaps::zeros(9, 11, 4);
  for (Grid* g : maps.channels())
    for (double& v : g->data()) v = static_cast<float>(uniform(rng));
  std::string b1 = write_ddhm(maps);
  std::string b2 = write_ddhm(read_ddhm(b1));
  if (b1 != b2) {
    ok = false;
    detail += "ddhm write-read-write not byte-identical; ";
  }

  auto cs = parse_cornell("0 0\n10 0\n10 4\n0 4\nNaN NaN\n1 0\n1 1\n0 1\n");
  if (cs.grasps.size() != 1 || cs.skipped != 1 ||
      std::abs(cs.grasps[0].center.x - 5) > 1e-9 ||
      std::abs(cs.grasps[0].center.y - 2) > 1e-9 ||
      std::abs(cs.grasps[0].theta - kPi / 2) > 1e-9 ||
      std::abs(cs.grasps[0].w - 4) > 1e-9 || std::abs(cs.grasps[0].h - 10) > 1e-9) {
    ok = false;
    detail += "cornell fixture mismatch; ";
  }

  auto js = parse_jacquard("50;60;90;20;10\n", JacquardOptions{.theta_flip = false});
  if (js.grasps.size() != 1 || std::abs(js.grasps[0].center.x - 50) > 1e-9 ||
      std::abs(js.grasps[0].center.y - 60) > 1e-9 ||
      std::abs(js.grasps[0].theta - kPi / 2) > 1e-9 ||
      std::abs(js.grasps[0].w - 20) > 1e-9 || std::abs(js.grasps[0].h - 10) > 1e-9) {
    ok = false;
    detail += "jacquard fixture mismatch; ";
  }

  report(7, "format determinism and parser fixtures", ok,
         ok ? "ddhm byte-identical; cornell and jacquard exact" : detail);
}

// ---------------------------------------------------------------- criterion 8
std::string run_cli(const std::string& args) {
  std::string cmd = std::string(DDGRASP_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "";
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  pclose(pipe);
  return out;
}

void criterion_live_defaults() {
  bool ok = true;
  std::string detail;
  auto expect = [&](const std::string& help, const char* flag, const char* value) {
    auto pos = help.find(flag);
    bool found = false;
    if (pos != std::string::npos) {
      auto line_end = help.find('\n', pos);
      // CLI11 prints captured defaults as "[value]" after the flag; defaults
      // may wrap onto the following description line
      auto seg_end = help.find("--", pos + 2);
      auto seg = help.substr(pos, std::min(seg_end, line_end + 200) - pos);
      found = seg.find(std::string("[") + value + "]") != std::string::npos;
    }
    if (!found) {
      ok = false;
      detail += std::string(flag) + " default " + value + " not in --help; ";
    }
  };

  std::string dec = run_cli("decode --help");
  expect(dec, "--topk", "70");
  expect(dec, "--min-open", "2");
  expect(dec, "--max-open", "70");
  expect(dec, "--center-radius-factor", "0.333333");
  expect(dec, "--ori-tol-deg", "30");

  std::string ev = run_cli("eval --help");
  expect(ev, "--iou", "0.25");
  expect(ev, "--angle-deg", "30");

  report(8, "paper defaults are live CLI defaults", ok,
         ok ? "top-k 70, opening [2,70], radius 1/3, thresholds 25%/30deg" : detail);
}

}  // namespace

int main() {
  criterion_roundtrip();
  criterion_ablation();
  criterion_iou();
  criterion_gradients();
  criterion_hand_values();
  criterion_simulator();
  criterion_formats();
  criterion_live_defaults();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
