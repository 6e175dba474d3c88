#pragma once

#include <array>
#include <vector>

#include "ddgrasp/geometry.hpp"

namespace ddg {

using Polygon = std::vector<Point2>;

// Shoelace area, positive for CCW vertex order (positive-shoelace
// convention; all polygons in this library use it).
double signed_area(const Polygon& poly);

// Boundary counts as inside.
bool point_in_polygon(Point2 p, const Polygon& poly);

// Sutherland-Hodgman; `clip` must be convex and CCW.
Polygon clip_convex(const Polygon& subject, const Polygon& clip);

// Proper or touching intersection between segments [a1,a2] and [b1,b2].
// On hit fills t (param on a) and u (param on b). Parallel overlaps report
// no hit.
bool segment_intersection(Point2 a1, Point2 a2, Point2 b1, Point2 b2,
                          double* t, double* u);

// Brute-force non-adjacent edge-pair check.
bool polygon_is_simple(const Polygon& poly);

// The 4 corners of an oriented rectangle, CCW.
std::array<Point2, 4> rect_corners(const OrientedRect& r);

}  // namespace ddg
