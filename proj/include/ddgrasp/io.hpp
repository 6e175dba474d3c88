#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ddgrasp/geometry.hpp"
#include "ddgrasp/maps.hpp"

namespace ddg {

struct AnnotationSet {
  std::string image_id;
  std::vector<OrientedRect> grasps;
  std::string source;  // "cornell" | "jacquard"
  int skipped = 0;     // NaN groups dropped by the Cornell parser
};

struct CornellOptions {
  // Which edge of the 4-vertex loop is a gripper plate: vertices 1-2 or
  // 2-3. Mirrors of the dataset disagree, so it stays explicit.
  int plate_edge = 12;
};

struct JacquardOptions {
  // The public annotation measures theta CCW in y-up axes; our raster is
  // y-down, so theta is negated on import by default.
  bool theta_flip = true;
};

// Cornell convention: 4 "x y" lines per rectangle. Groups containing NaN
// vertices are skipped and counted. Throws with a line number on malformed
// input.
AnnotationSet parse_cornell(const std::string& text, const CornellOptions& opts = {});

// Jacquard convention: "x;y;theta;opening;jaw" per line, theta in degrees.
// Blank and '#' lines are ignored. Throws with a line number on malformed
// input.
AnnotationSet parse_jacquard(const std::string& text, const JacquardOptions& opts = {});

// DDHM container: "DDHM" magic, u32 LE version/height/width/channel_count/
// stride, then 8 float32 LE row-major planes. write/read round-trips are
// bit-exact.
std::string write_ddhm(const GraspMaps& maps);
GraspMaps read_ddhm(const std::string& bytes);

struct ScoredGrasp {
  DoubleDotGrasp grasp;
  double score = 0.0;
};

// Per-image predictions, descending by score; order of images preserved.
using PredictionFile = std::vector<std::pair<std::string, std::vector<ScoredGrasp>>>;

// Text lines "image_id x1 y1 x2 y2 score" (6 decimals); an image with no
// predictions writes a bare "image_id" line.
std::string write_predictions(const PredictionFile& preds);
PredictionFile read_predictions(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

// Scene vertex lists: one "x y" per line, '#'-comments allowed.
std::string write_vertex_list(const std::vector<Point2>& vertices);
std::vector<Point2> parse_vertex_list(const std::string& text);

}  // namespace ddg
