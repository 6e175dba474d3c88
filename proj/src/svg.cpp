#include "ddgrasp/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace ddg {

namespace {
std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}
}  // namespace

SvgCanvas::SvgCanvas(double width, double height) : width_(width), height_(height) {}

void SvgCanvas::add_rect(double x, double y, double w, double h,
                         const std::string& fill) {
  body_ += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(w) +
           "\" height=\"" + fmt(h) + "\" fill=\"" + fill + "\"/>\n";
}

void SvgCanvas::add_line(Point2 a, Point2 b, const std::string& stroke, double width) {
  body_ += "<line x1=\"" + fmt(a.x) + "\" y1=\"" + fmt(a.y) + "\" x2=\"" + fmt(b.x) +
           "\" y2=\"" + fmt(b.y) + "\" stroke=\"" + stroke + "\" stroke-width=\"" +
           fmt(width) + "\"/>\n";
}

void SvgCanvas::add_circle(Point2 c, double r, const std::string& fill) {
  body_ += "<circle cx=\"" + fmt(c.x) + "\" cy=\"" + fmt(c.y) + "\" r=\"" + fmt(r) +
           "\" fill=\"" + fill + "\"/>\n";
}

void SvgCanvas::add_polygon(const Polygon& poly, const std::string& fill,
                            const std::string& stroke) {
  body_ += "<polygon points=\"";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i) body_ += " ";
    body_ += fmt(poly[i].x) + "," + fmt(poly[i].y);
  }
  body_ += "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\"/>\n";
}

std::string SvgCanvas::str() const {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         fmt(width_) + "\" height=\"" + fmt(height_) + "\" viewBox=\"0 0 " +
         fmt(width_) + " " + fmt(height_) + "\">\n" + body_ + "</svg>\n";
}

std::string svg_heatmap(const GraspMaps& maps, int cell_px) {
  SvgCanvas svg(maps.cols() * cell_px, maps.rows() * cell_px);
  for (int r = 0; r < maps.rows(); ++r) {
    for (int c = 0; c < maps.cols(); ++c) {
      double v = maps.fingertip_score.at(r, c);
      if (v <= 0.0) continue;
      int gray = static_cast<int>(std::clamp(v, 0.0, 1.0) * 255.0);
      char color[16];
      std::snprintf(color, sizeof color, "#%02x%02x%02x", gray, gray, gray);
      svg.add_rect(c * cell_px, r * cell_px, cell_px, cell_px, color);
    }
  }
  return svg.str();
}

std::string svg_predictions(const PredictionFile& preds, double width, double height) {
  SvgCanvas svg(width, height);
  for (const auto& [id, grasps] : preds) {
    for (std::size_t i = 0; i < grasps.size(); ++i) {
      const std::string stroke = (i == 0) ? "#d62728" : "#1f77b4";
      svg.add_line(grasps[i].grasp.c1, grasps[i].grasp.c2, stroke, 1.5);
      svg.add_circle(grasps[i].grasp.c1, 2.5, stroke);
      svg.add_circle(grasps[i].grasp.c2, 2.5, stroke);
    }
  }
  return svg.str();
}

std::string svg_scene(const Polygon& poly, double width, double height) {
  SvgCanvas svg(width, height);
  svg.add_polygon(poly, "#cccccc", "#333333");
  return svg.str();
}

}  // namespace ddg
