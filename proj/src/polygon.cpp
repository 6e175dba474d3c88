#include "ddgrasp/polygon.hpp"

#include <cmath>

namespace ddg {

namespace {
constexpr double kEps = 1e-9;

bool on_segment(Point2 p, Point2 a, Point2 b) {
  Point2 ab = b - a;
  Point2 ap = p - a;
  double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a) <= kEps;
  if (std::fabs(cross(ab, ap)) > kEps * std::sqrt(len2)) return false;
  double t = dot(ap, ab) / len2;
  return t >= -kEps && t <= 1.0 + kEps;
}
}  // namespace

double signed_area(const Polygon& poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % poly.size()];
    s += cross(a, b);
  }
  return 0.5 * s;
}

bool point_in_polygon(Point2 p, const Polygon& poly) {
  std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i)
    if (on_segment(p, poly[i], poly[(i + 1) % n])) return true;
  // crossing number
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    if ((a.y > p.y) != (b.y > p.y)) {
      double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (x > p.x) inside = !inside;
    }
  }
  return inside;
}

Polygon clip_convex(const Polygon& subject, const Polygon& clip) {
  Polygon out = subject;
  std::size_t n = clip.size();
  for (std::size_t i = 0; i < n && !out.empty(); ++i) {
    Point2 a = clip[i];
    Point2 b = clip[(i + 1) % n];
    Point2 edge = b - a;
    Polygon in;
    in.swap(out);
    for (std::size_t j = 0; j < in.size(); ++j) {
      Point2 cur = in[j];
      Point2 nxt = in[(j + 1) % in.size()];
      double side_cur = cross(edge, cur - a);
      double side_nxt = cross(edge, nxt - a);
      if (side_cur >= 0.0) out.push_back(cur);
      if ((side_cur > 0.0 && side_nxt < 0.0) || (side_cur < 0.0 && side_nxt > 0.0)) {
        double t = side_cur / (side_cur - side_nxt);
        out.push_back(cur + t * (nxt - cur));
      }
    }
  }
  return out;
}

bool segment_intersection(Point2 a1, Point2 a2, Point2 b1, Point2 b2,
                          double* t, double* u) {
  Point2 r = a2 - a1;
  Point2 s = b2 - b1;
  double denom = cross(r, s);
  if (std::fabs(denom) < 1e-12) return false;
  Point2 qp = b1 - a1;
  double tt = cross(qp, s) / denom;
  double uu = cross(qp, r) / denom;
  if (tt < -kEps || tt > 1.0 + kEps || uu < -kEps || uu > 1.0 + kEps) return false;
  if (t) *t = tt;
  if (u) *u = uu;
  return true;
}

bool polygon_is_simple(const Polygon& poly) {
  std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // skip adjacent edges (shared vertex)
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      double t, u;
      if (segment_intersection(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n],
                               &t, &u))
        return false;
    }
  }
  return true;
}

std::array<Point2, 4> rect_corners(const OrientedRect& r) {
  Rotation2 rot(r.theta);
  double hw = 0.5 * r.w, hh = 0.5 * r.h;
  return {r.center + rot.apply({hw, hh}), r.center + rot.apply({-hw, hh}),
          r.center + rot.apply({-hw, -hh}), r.center + rot.apply({hw, -hh})};
}

}  // namespace ddg
