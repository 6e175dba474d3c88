#pragma once

#include <string>
#include <vector>

#include "ddgrasp/geometry.hpp"
#include "ddgrasp/io.hpp"
#include "ddgrasp/maps.hpp"
#include "ddgrasp/polygon.hpp"

namespace ddg {

// Minimal standalone-SVG builder; output is deterministic for fixed input.
class SvgCanvas {
 public:
  SvgCanvas(double width, double height);
  void add_rect(double x, double y, double w, double h, const std::string& fill);
  void add_line(Point2 a, Point2 b, const std::string& stroke, double width);
  void add_circle(Point2 c, double r, const std::string& fill);
  void add_polygon(const Polygon& poly, const std::string& fill,
                   const std::string& stroke);
  std::string str() const;

 private:
  double width_, height_;
  std::string body_;
};

// Grayscale cell grid of the fingertip heatmap, dots at offset-refined
// peaks.
std::string svg_heatmap(const GraspMaps& maps, int cell_px = 4);

// Grasp segments with fingertip dots, best grasp highlighted.
std::string svg_predictions(const PredictionFile& preds, double width, double height);

std::string svg_scene(const Polygon& poly, double width, double height);

}  // namespace ddg
