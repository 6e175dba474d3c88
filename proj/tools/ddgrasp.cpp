// ddgrasp: label rendering, grasp decoding, evaluation, polygon-scene
// simulation and SVG rendering around the double-dot grasp pipeline.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ddgrasp/decode.hpp"
#include "ddgrasp/io.hpp"
#include "ddgrasp/labeling.hpp"
#include "ddgrasp/metrics.hpp"
#include "ddgrasp/pipeline.hpp"
#include "ddgrasp/sim.hpp"
#include "ddgrasp/svg.hpp"

namespace fs = std::filesystem;
using namespace ddg;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitProcessing = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "a..b" -> [a, b)
std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& s) {
  auto pos = s.find("..");
  if (pos == std::string::npos)
    throw UsageError("--seeds expects 'a..b' (half-open range)");
  try {
    std::uint64_t a = std::stoull(s.substr(0, pos));
    std::uint64_t b = std::stoull(s.substr(pos + 2));
    if (b <= a) throw UsageError("--seeds: empty range '" + s + "'");
    return {a, b};
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("--seeds: malformed range '" + s + "'");
  }
}

std::pair<int, int> parse_size(const std::string& s) {
  auto pos = s.find('x');
  if (pos == std::string::npos) throw UsageError("--size expects 'HxW'");
  try {
    int h = std::stoi(s.substr(0, pos));
    int w = std::stoi(s.substr(pos + 1));
    if (h <= 0 || w <= 0) throw UsageError("--size: dimensions must be positive");
    return {h, w};
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("--size: malformed '" + s + "'");
  }
}

AnnotationSet parse_annotations(const std::string& text, const std::string& format,
                                int plate_edge, bool theta_flip) {
  if (format == "cornell") {
    CornellOptions opts;
    opts.plate_edge = plate_edge;
    return parse_cornell(text, opts);
  }
  JacquardOptions opts;
  opts.theta_flip = theta_flip;
  return parse_jacquard(text, opts);
}

struct LabelArgs {
  std::string in, format = "jacquard", size = "128x128", out;
  int stride = 4;
  int plate_edge = 12;
  bool no_theta_flip = false;
  double sigma_x = 1.0;
  double sigma_y_factor = 0.75;
};

int cmd_label(const LabelArgs& a) {
  AnnotationSet anns;
  try {
    anns = parse_annotations(read_file(a.in), a.format, a.plate_edge, !a.no_theta_flip);
  } catch (const std::exception& e) {
    std::cerr << "label: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    auto [h, w] = parse_size(a.size);
    LabelConfig cfg;
    cfg.map_height = h;
    cfg.map_width = w;
    cfg.stride = a.stride;
    cfg.sigma_x = a.sigma_x;
    cfg.sigma_y_factor = a.sigma_y_factor;
    TargetMaps maps = render_targets(anns.grasps, cfg);
    write_file(a.out, write_ddhm(maps));
  } catch (const UsageError& e) {
    std::cerr << "label: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "label: " << e.what() << "\n";
    return kExitProcessing;
  }
  if (anns.skipped > 0)
    std::cerr << "label: skipped " << anns.skipped << " NaN group(s)\n";
  return 0;
}

struct DecodeArgs {
  std::string maps, out, image_id = "img0";
  int topk = 70;
  double ori_tol_deg = 30.0;
  double min_open = 2.0;
  double max_open = 70.0;
  double center_radius_factor = 1.0 / 3.0;
  int nms_window = 3;
  bool no_ori_match = false;
  bool no_center_match = false;
};

int cmd_decode(const DecodeArgs& a) {
  try {
    GraspMaps maps = read_ddhm(read_file(a.maps));
    DecodeConfig cfg;
    cfg.top_k = a.topk;
    cfg.stride = maps.stride;
    cfg.min_opening = a.min_open;
    cfg.max_opening = a.max_open;
    cfg.orientation_tolerance = a.ori_tol_deg * kPi / 180.0;
    cfg.center_radius_factor = a.center_radius_factor;
    cfg.nms_window = a.nms_window;
    cfg.use_orientation_match = !a.no_ori_match;
    cfg.use_center_match = !a.no_center_match;
    auto candidates = decode(maps, cfg);

    PredictionFile preds;
    preds.push_back({a.image_id, {}});
    for (const auto& c : candidates)
      preds.back().second.push_back({c.grasp, c.score});
    if (!a.out.empty()) write_file(a.out, write_predictions(preds));

    if (candidates.empty()) {
      std::cout << "no grasp\n";
    } else {
      const auto& best = candidates.front();
      std::printf("best %.6f %.6f %.6f %.6f score %.6f\n", best.grasp.c1.x,
                  best.grasp.c1.y, best.grasp.c2.x, best.grasp.c2.y, best.score);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "decode: " << e.what() << "\n";
    return kExitUsage;
  }
}

struct EvalArgs {
  std::string pred, gt_dir, format = "jacquard";
  double iou = 0.25;
  double angle_deg = 30.0;
  double plate_h = 10.0;
  int plate_edge = 12;
  bool no_theta_flip = false;
};

int cmd_eval(const EvalArgs& a) {
  try {
    PredictionFile preds = read_predictions(read_file(a.pred));

    std::map<std::string, std::vector<OrientedRect>> gts;
    for (const auto& entry : fs::directory_iterator(a.gt_dir)) {
      if (!entry.is_regular_file()) continue;
      auto set = parse_annotations(read_file(entry.path().string()), a.format,
                                   a.plate_edge, !a.no_theta_flip);
      gts[entry.path().stem().string()] = set.grasps;
    }
    if (gts.empty()) throw UsageError("no ground-truth files in '" + a.gt_dir + "'");

    std::map<std::string, std::optional<OrientedRect>> top;
    for (const auto& [id, grasps] : preds) {
      if (!gts.count(id)) throw UsageError("prediction image id '" + id +
                                           "' has no ground truth");
      if (!grasps.empty())
        top[id] = grasp_to_rect(grasps.front().grasp, a.plate_h);
      else
        top[id] = std::nullopt;
    }

    RectMetricConfig cfg;
    cfg.iou_threshold = a.iou;
    cfg.angle_threshold = a.angle_deg * kPi / 180.0;
    EvalReport report = evaluate(top, gts, cfg);
    for (const auto& row : report.rows)
      std::printf("image %s %s iou %.4f angle_deg %.2f\n", row.id.c_str(),
                  row.matched ? "match" : (row.has_pred ? "miss" : "missing"),
                  row.best_iou, row.angle_error * 180.0 / kPi);
    std::printf("n_images %d\nn_success %d\naccuracy %.6f\n", report.n_images,
                report.n_success, report.accuracy);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "eval: " << e.what() << "\n";
    return kExitUsage;
  }
}

struct GripperSceneArgs {
  double mu = 0.4;
  double min_open = 2.0;
  double max_open = 70.0;
  int min_vertices = 6;
  int max_vertices = 9;
  double min_radius = 18.0;
  double max_radius = 30.0;
  double irregularity = 0.35;
};

GripperModel gripper_from(const GripperSceneArgs& a) {
  GripperModel g;
  g.mu = a.mu;
  g.min_opening = a.min_open;
  g.max_opening = a.max_open;
  return g;
}

SceneParams scene_from(const GripperSceneArgs& a) {
  SceneParams s;
  s.min_vertices = a.min_vertices;
  s.max_vertices = a.max_vertices;
  s.min_radius = a.min_radius;
  s.max_radius = a.max_radius;
  s.irregularity = a.irregularity;
  return s;
}

struct SimArgs {
  std::string seeds, preds;
  bool oracle = false;
  GripperSceneArgs gs;
};

int cmd_sim(const SimArgs& a) {
  try {
    auto [begin, end] = parse_seed_range(a.seeds);
    GripperModel gripper = gripper_from(a.gs);
    SceneParams params = scene_from(a.gs);

    GraspPredictor predictor;
    PredictionFile preds;
    if (a.oracle) {
      predictor = [&gripper](const PolygonScene& scene) -> std::optional<DoubleDotGrasp> {
        auto gts = gt_grasps(scene, gripper);
        if (gts.empty()) return std::nullopt;
        return gts.front();
      };
    } else {
      preds = read_predictions(read_file(a.preds));
      predictor = [&preds](const PolygonScene& scene) -> std::optional<DoubleDotGrasp> {
        std::string id = std::to_string(scene.seed);
        for (const auto& [k, grasps] : preds)
          if (k == id && !grasps.empty()) return grasps.front().grasp;
        return std::nullopt;
      };
    }
    TrialStats stats = run_trials(begin, end, predictor, gripper, params);
    for (const auto& rec : stats.records)
      std::printf("seed %llu %s %s\n", static_cast<unsigned long long>(rec.seed),
                  rec.success ? "success" : "failure", to_string(rec.reason));
    std::printf("mu %.3f\nsuccess_rate %.6f\n", gripper.mu, stats.rate());
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "sim: " << e.what() << "\n";
    return kExitUsage;
  }
}

struct RoundtripArgs {
  std::string seeds;
  int map_size = 128;
  int stride = 4;
  double plate_h = 10.0;
  int max_rendered = 1;
  GripperSceneArgs gs;
};

int cmd_roundtrip(const RoundtripArgs& a) {
  try {
    RoundtripConfig cfg;
    std::tie(cfg.seed_begin, cfg.seed_end) = parse_seed_range(a.seeds);
    cfg.map_size = a.map_size;
    cfg.stride = a.stride;
    cfg.plate_h = a.plate_h;
    cfg.max_rendered = a.max_rendered;
    cfg.gripper = gripper_from(a.gs);
    cfg.scene = scene_from(a.gs);
    RoundtripReport report = run_roundtrip(cfg);
    for (const auto& o : report.seeds)
      std::printf("seed %llu gt=%d decoded=%d recovered=%d rect=%d sim=%d err=%.4f %s\n",
                  static_cast<unsigned long long>(o.seed), o.has_gt, o.decoded,
                  o.recovered, o.rect_matched, o.sim_success, o.fingertip_error,
                  to_string(o.sim_reason));
    std::printf("recovery_rate %.6f\nsim_success_rate %.6f\n",
                report.recovery_rate(), report.sim_rate());
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "roundtrip: " << e.what() << "\n";
    return kExitUsage;
  }
}

struct RenderArgs {
  std::string maps, preds, scene, svg;
  double width = 512, height = 512;
};

int cmd_render(const RenderArgs& a) {
  try {
    int sources = (!a.maps.empty()) + (!a.preds.empty()) + (!a.scene.empty());
    if (sources != 1)
      throw UsageError("render: give exactly one of --maps, --preds, --scene");
    std::string out;
    if (!a.maps.empty())
      out = svg_heatmap(read_ddhm(read_file(a.maps)));
    else if (!a.preds.empty())
      out = svg_predictions(read_predictions(read_file(a.preds)), a.width, a.height);
    else
      out = svg_scene(parse_vertex_list(read_file(a.scene)), a.width, a.height);
    write_file(a.svg, out);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "render: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double-dot grasp pipeline: labeling, decoding, metrics, simulation"};
  app.require_subcommand(1);

  LabelArgs label;
  auto* sc_label = app.add_subcommand("label", "render target maps from annotations");
  sc_label->add_option("--in", label.in, "annotation file")->required();
  sc_label->add_option("--format", label.format, "annotation format")
      ->check(CLI::IsMember({"cornell", "jacquard"}))
      ->capture_default_str();
  sc_label->add_option("--size", label.size, "map size HxW")->capture_default_str();
  sc_label->add_option("--stride", label.stride, "down-sampling factor n")
      ->capture_default_str();
  sc_label->add_option("--out", label.out, "output .ddhm path")->required();
  sc_label->add_option("--plate-edge", label.plate_edge, "cornell plate edge (12 or 23)")
      ->check(CLI::IsMember({12, 23}))
      ->capture_default_str();
  sc_label->add_flag("--no-theta-flip", label.no_theta_flip,
                     "keep jacquard theta sign as annotated");
  sc_label->add_option("--sigma-x", label.sigma_x, "gaussian sigma along the grasp axis")
      ->capture_default_str();
  sc_label->add_option("--sigma-y-factor", label.sigma_y_factor,
                       "sigma_y = factor * jaw size")
      ->capture_default_str();

  DecodeArgs dec;
  auto* sc_decode = app.add_subcommand("decode", "decode grasps from prediction maps");
  sc_decode->add_option("--maps", dec.maps, "input .ddhm path")->required();
  sc_decode->add_option("--out", dec.out, "prediction output path");
  sc_decode->add_option("--image-id", dec.image_id, "image id for the output records")
      ->capture_default_str();
  sc_decode->add_option("--topk", dec.topk, "top-k fingertip candidates")
      ->capture_default_str();
  sc_decode->add_option("--ori-tol-deg", dec.ori_tol_deg,
                        "orientation matching tolerance (degrees)")
      ->capture_default_str();
  sc_decode->add_option("--min-open", dec.min_open, "minimum opening (px)")
      ->capture_default_str();
  sc_decode->add_option("--max-open", dec.max_open, "maximum opening (px)")
      ->capture_default_str();
  sc_decode->add_option("--center-radius-factor", dec.center_radius_factor,
                        "center region radius as a fraction of the opening")
      ->capture_default_str();
  sc_decode->add_option("--nms-window", dec.nms_window, "peak suppression window")
      ->capture_default_str();
  sc_decode->add_flag("--no-ori-match", dec.no_ori_match, "disable orientation matching");
  sc_decode->add_flag("--no-center-match", dec.no_center_match, "disable center matching");

  EvalArgs ev;
  auto* sc_eval = app.add_subcommand("eval", "rectangle-metric evaluation");
  sc_eval->add_option("--pred", ev.pred, "prediction file")->required();
  sc_eval->add_option("--gt-dir", ev.gt_dir, "directory of per-image annotation files")
      ->required();
  sc_eval->add_option("--format", ev.format, "annotation format")
      ->check(CLI::IsMember({"cornell", "jacquard"}))
      ->capture_default_str();
  sc_eval->add_option("--iou", ev.iou, "IoU threshold")->capture_default_str();
  sc_eval->add_option("--angle-deg", ev.angle_deg, "angle threshold (degrees)")
      ->capture_default_str();
  sc_eval->add_option("--plate-h", ev.plate_h, "plate size for predicted rectangles (px)")
      ->capture_default_str();
  sc_eval->add_option("--plate-edge", ev.plate_edge, "cornell plate edge (12 or 23)")
      ->check(CLI::IsMember({12, 23}))
      ->capture_default_str();
  sc_eval->add_flag("--no-theta-flip", ev.no_theta_flip,
                    "keep jacquard theta sign as annotated");

  SimArgs sim;
  auto* sc_sim = app.add_subcommand("sim", "simulated grasp trials on polygon scenes");
  sc_sim->add_option("--seeds", sim.seeds, "seed range a..b (half-open)")->required();
  sc_sim->add_option("--preds", sim.preds, "prediction file (image ids are seeds)");
  sc_sim->add_flag("--oracle", sim.oracle, "use gt_grasps as the predictor");
  sc_sim->add_option("--mu", sim.gs.mu, "friction coefficient")->capture_default_str();
  sc_sim->add_option("--min-open", sim.gs.min_open, "minimum opening (px)")
      ->capture_default_str();
  sc_sim->add_option("--max-open", sim.gs.max_open, "maximum opening (px)")
      ->capture_default_str();

  RoundtripArgs rt;
  auto* sc_rt = app.add_subcommand("roundtrip",
                                   "label-decode-execute self-verification");
  sc_rt->add_option("--seeds", rt.seeds, "seed range a..b (half-open)")->required();
  sc_rt->add_option("--map-size", rt.map_size, "square map size")->capture_default_str();
  sc_rt->add_option("--stride", rt.stride, "down-sampling factor n")->capture_default_str();
  sc_rt->add_option("--plate-h", rt.plate_h, "plate size for rendered rectangles (px)")
      ->capture_default_str();
  sc_rt->add_option("--max-render", rt.max_rendered, "gt grasps rendered per scene")
      ->capture_default_str();
  sc_rt->add_option("--mu", rt.gs.mu, "friction coefficient")->capture_default_str();

  RenderArgs ren;
  auto* sc_render = app.add_subcommand("render", "emit an SVG visualization");
  sc_render->add_option("--maps", ren.maps, "heatmap .ddhm to render");
  sc_render->add_option("--preds", ren.preds, "prediction file to render");
  sc_render->add_option("--scene", ren.scene, "scene vertex list to render");
  sc_render->add_option("--svg", ren.svg, "output SVG path")->required();
  sc_render->add_option("--width", ren.width, "canvas width")->capture_default_str();
  sc_render->add_option("--height", ren.height, "canvas height")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help exits 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (sc_sim->parsed() && !sim.oracle && sim.preds.empty()) {
    std::cerr << "sim: give --preds or --oracle\n";
    return kExitUsage;
  }

  if (sc_label->parsed()) return cmd_label(label);
  if (sc_decode->parsed()) return cmd_decode(dec);
  if (sc_eval->parsed()) return cmd_eval(ev);
  if (sc_sim->parsed()) return cmd_sim(sim);
  if (sc_rt->parsed()) return cmd_roundtrip(rt);
  if (sc_render->parsed()) return cmd_render(ren);
  return kExitUsage;
}
