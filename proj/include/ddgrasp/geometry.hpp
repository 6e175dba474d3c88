#pragma once

#include <cmath>
#include <stdexcept>

namespace ddg {

inline constexpr double kPi = 3.14159265358979323846;

// Image-plane point: origin top-left, x right, y down (pixels).
struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 normalized(Point2 p) {
  double n = norm(p);
  if (n == 0.0) throw std::invalid_argument("normalized: zero vector");
  return {p.x / n, p.y / n};
}
inline Point2 midpoint(Point2 a, Point2 b) {
  return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
}

// A grasp as the pair of fingertip centers.
struct DoubleDotGrasp {
  Point2 c1;
  Point2 c2;
};

// {x, y, w, h, theta} grasp rectangle: w is the opening size along the grasp
// axis, h the jaw/plate size, theta in [0, pi) from the horizontal image axis.
struct OrientedRect {
  Point2 center;
  double w = 0.0;
  double h = 0.0;
  double theta = 0.0;
};

struct Rotation2 {
  double c = 1.0;
  double s = 0.0;
  Rotation2() = default;
  explicit Rotation2(double theta) : c(std::cos(theta)), s(std::sin(theta)) {}
  Point2 apply(Point2 p) const { return {c * p.x - s * p.y, s * p.x + c * p.y}; }
  Rotation2 inverse() const {
    Rotation2 r;
    r.c = c;
    r.s = -s;
    return r;
  }
};

// Reduce an angle into [0, pi). Grasps are symmetric under a half turn, so
// axis angles live on this interval everywhere a rectangle is involved.
double mod_pi(double a);

// Reduce an angle into (-pi, pi].
double wrap_pi(double a);

// Absolute full-circle difference, in [0, pi].
double angle_diff(double a, double b);

// Axis (mod-pi) difference folded to the acute residual, in [0, pi/2].
double axis_angle_diff(double a, double b);

DoubleDotGrasp rect_to_grasp(const OrientedRect& r);

// Inverse conversion; `jaw` supplies the plate size the rectangle needs.
// Throws on a degenerate grasp (c1 == c2).
OrientedRect grasp_to_rect(const DoubleDotGrasp& g, double jaw);

// Angle of the line through the two fingertips, in [0, pi).
double grasp_axis_angle(const DoubleDotGrasp& g);

// Full-circle direction from a fingertip toward the grasp center, in
// (-pi, pi]. Full-circle on purpose: the two fingertips of one grasp must
// come out exactly pi apart so antipodal pairs can be told from collinear
// non-antipodal ones.
double fingertip_orientation(Point2 fingertip, Point2 center);

}  // namespace ddg
