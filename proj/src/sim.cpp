#include "ddgrasp/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace ddg {

namespace {

// Hand-rolled uniforms: std::uniform_*_distribution output is
// implementation-defined, and scene bytes must be stable for a given seed.
double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }
double uniform(std::mt19937_64& rng, double a, double b) {
  return a + (b - a) * uniform01(rng);
}
int uniform_int(std::mt19937_64& rng, int a, int b) {
  return a + static_cast<int>(rng() % static_cast<std::uint64_t>(b - a + 1));
}

Point2 edge_outward_normal(const Polygon& poly, std::size_t i) {
  Point2 d = poly[(i + 1) % poly.size()] - poly[i];
  return normalized({d.y, -d.x});
}

double angle_between(Point2 a, Point2 b) {
  double c = std::clamp(dot(a, b) / (norm(a) * norm(b)), -1.0, 1.0);
  return std::acos(c);
}

// First boundary hit of segment [from, to], t in (0, 1]. Returns edge index
// or -1.
int first_boundary_hit(const Polygon& poly, Point2 from, Point2 to, double* t_out,
                       double* u_out) {
  int best_edge = -1;
  double best_t = 2.0, best_u = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    double t, u;
    if (!segment_intersection(from, to, poly[i], poly[(i + 1) % poly.size()], &t, &u))
      continue;
    if (t <= 1e-9) continue;
    if (t < best_t) {
      best_t = t;
      best_u = u;
      best_edge = static_cast<int>(i);
    }
  }
  if (best_edge >= 0) {
    if (t_out) *t_out = best_t;
    if (u_out) *u_out = best_u;
  }
  return best_edge;
}

// Inward normal at a boundary hit; a hit at a vertex takes the bisector of
// the adjacent edge normals.
Point2 inward_normal_at(const Polygon& poly, int edge, double u) {
  std::size_t n = poly.size();
  Point2 out;
  if (u < 1e-9) {
    Point2 prev = edge_outward_normal(poly, (edge + n - 1) % n);
    out = normalized(prev + edge_outward_normal(poly, edge));
  } else if (u > 1.0 - 1e-9) {
    Point2 next = edge_outward_normal(poly, (edge + 1) % n);
    out = normalized(edge_outward_normal(poly, edge) + next);
  } else {
    out = edge_outward_normal(poly, edge);
  }
  return {-out.x, -out.y};
}

}  // namespace

const char* to_string(GraspFailure f) {
  switch (f) {
    case GraspFailure::none: return "none";
    case GraspFailure::collision: return "collision";
    case GraspFailure::opening: return "opening";
    case GraspFailure::no_contact: return "no_contact";
    case GraspFailure::friction_cone: return "friction_cone";
  }
  return "unknown";
}

PolygonScene generate_scene(std::uint64_t seed, const SceneParams& params) {
  if (params.min_vertices < 3 || params.max_vertices < params.min_vertices)
    throw std::invalid_argument("generate_scene: bad vertex-count range");
  if (params.min_radius <= 0.0 || params.max_radius < params.min_radius)
    throw std::invalid_argument("generate_scene: bad radius range");
  if (params.irregularity < 0.0 || params.irregularity > 1.0)
    throw std::invalid_argument("generate_scene: irregularity must be in [0, 1]");

  std::mt19937_64 rng(seed);
  int nv = uniform_int(rng, params.min_vertices, params.max_vertices);
  double spacing = 2.0 * kPi / nv;

  PolygonScene scene;
  scene.seed = seed;
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<double> angles(nv);
    for (int i = 0; i < nv; ++i)
      angles[i] = (i + params.irregularity * uniform(rng, -0.5, 0.5)) * spacing;
    std::sort(angles.begin(), angles.end());
    bool ok = true;
    for (int i = 0; ok && i < nv; ++i) {
      double next = (i + 1 < nv) ? angles[i + 1] : angles[0] + 2.0 * kPi;
      if (next - angles[i] < 0.05) ok = false;
    }
    if (!ok) continue;
    scene.vertices.clear();
    for (int i = 0; i < nv; ++i) {
      double r = uniform(rng, params.min_radius, params.max_radius);
      scene.vertices.push_back(
          {params.center.x + r * std::cos(angles[i]),
           params.center.y + r * std::sin(angles[i])});
    }
    if (polygon_is_simple(scene.vertices) && signed_area(scene.vertices) > 0.0)
      return scene;
  }
  throw std::runtime_error("generate_scene: could not build a simple polygon");
}

GraspOutcome execute_grasp(const PolygonScene& scene, const DoubleDotGrasp& grasp,
                           const GripperModel& gripper) {
  const Polygon& poly = scene.vertices;
  if (point_in_polygon(grasp.c1, poly) || point_in_polygon(grasp.c2, poly))
    return {false, GraspFailure::collision};

  double opening = distance(grasp.c1, grasp.c2);
  if (opening < gripper.min_opening || opening > gripper.max_opening)
    return {false, GraspFailure::opening};

  Point2 mid = midpoint(grasp.c1, grasp.c2);
  double cone = std::atan(gripper.mu);
  for (Point2 tip : {grasp.c1, grasp.c2}) {
    double t, u;
    int edge = first_boundary_hit(poly, tip, mid, &t, &u);
    if (edge < 0) return {false, GraspFailure::no_contact};
    Point2 closing = normalized(mid - tip);
    Point2 inward = inward_normal_at(poly, edge, u);
    if (angle_between(closing, inward) > cone)
      return {false, GraspFailure::friction_cone};
  }
  return {true, GraspFailure::none};
}

std::vector<DoubleDotGrasp> gt_grasps(const PolygonScene& scene,
                                      const GripperModel& gripper) {
  const Polygon& poly = scene.vertices;
  const std::size_t n = poly.size();
  const double pair_cone = 2.0 * std::atan(gripper.mu);
  const double clearance = 1.0;

  std::vector<DoubleDotGrasp> out;
  for (std::size_t i = 0; i < n; ++i) {
    Point2 ni = edge_outward_normal(poly, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      Point2 nj = edge_outward_normal(poly, j);
      if (angle_between({-ni.x, -ni.y}, nj) > pair_cone) continue;
      Point2 d = normalized(nj - ni);  // bisector of -ni and nj

      for (double t : {0.5, 0.25, 0.75}) {
        Point2 p1 = poly[i] + t * (poly[(i + 1) % n] - poly[i]);
        // cast inward along d to find the exit contact
        Point2 far = p1 + 1000.0 * d;
        double tt, uu;
        int hit = first_boundary_hit(poly, p1, far, &tt, &uu);
        if (hit < 0) continue;
        Point2 p2 = p1 + (tt * 1000.0) * d;
        DoubleDotGrasp g{p1 - clearance * d, p2 + clearance * d};
        double opening = distance(g.c1, g.c2);
        if (opening < gripper.min_opening || opening > gripper.max_opening) continue;
        if (execute_grasp(scene, g, gripper).success) {
          out.push_back(g);
          break;
        }
      }
    }
  }
  return out;
}

TrialStats run_trials(std::uint64_t seed_begin, std::uint64_t seed_end,
                      const GraspPredictor& predictor, const GripperModel& gripper,
                      const SceneParams& params) {
  if (seed_end <= seed_begin)
    throw std::invalid_argument("run_trials: empty seed range");
  TrialStats stats;
  for (std::uint64_t seed = seed_begin; seed < seed_end; ++seed) {
    PolygonScene scene = generate_scene(seed, params);
    TrialRecord rec;
    rec.seed = seed;
    if (auto g = predictor(scene)) {
      rec.had_grasp = true;
      GraspOutcome o = execute_grasp(scene, *g, gripper);
      rec.success = o.success;
      rec.reason = o.reason;
    } else {
      rec.reason = GraspFailure::no_contact;
    }
    if (rec.success) ++stats.n_success;
    stats.records.push_back(rec);
  }
  return stats;
}

}  // namespace ddg
