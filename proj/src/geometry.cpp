#include "ddgrasp/geometry.hpp"

namespace ddg {

double mod_pi(double a) {
  double r = std::fmod(a, kPi);
  if (r < 0.0) r += kPi;
  if (r >= kPi) r = 0.0;  // fmod rounding at the boundary
  return r;
}

double wrap_pi(double a) {
  double r = std::fmod(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  if (r > kPi) r -= 2.0 * kPi;
  return r;
}

double angle_diff(double a, double b) { return std::fabs(wrap_pi(a - b)); }

double axis_angle_diff(double a, double b) {
  double d = mod_pi(a - b);
  return std::min(d, kPi - d);
}

DoubleDotGrasp rect_to_grasp(const OrientedRect& r) {
  Point2 half{0.5 * r.w * std::cos(r.theta), 0.5 * r.w * std::sin(r.theta)};
  return {r.center + half, r.center - half};
}

OrientedRect grasp_to_rect(const DoubleDotGrasp& g, double jaw) {
  double opening = distance(g.c1, g.c2);
  if (opening == 0.0) throw std::invalid_argument("grasp_to_rect: zero opening");
  if (jaw <= 0.0) throw std::invalid_argument("grasp_to_rect: jaw must be positive");
  OrientedRect r;
  r.center = midpoint(g.c1, g.c2);
  r.w = opening;
  r.h = jaw;
  r.theta = mod_pi(std::atan2(g.c2.y - g.c1.y, g.c2.x - g.c1.x));
  return r;
}

double grasp_axis_angle(const DoubleDotGrasp& g) {
  if (g.c1.x == g.c2.x && g.c1.y == g.c2.y)
    throw std::invalid_argument("grasp_axis_angle: zero opening");
  return mod_pi(std::atan2(g.c2.y - g.c1.y, g.c2.x - g.c1.x));
}

double fingertip_orientation(Point2 fingertip, Point2 center) {
  if (fingertip.x == center.x && fingertip.y == center.y)
    throw std::invalid_argument("fingertip_orientation: fingertip at center");
  return std::atan2(center.y - fingertip.y, center.x - fingertip.x);
}

}  // namespace ddg
