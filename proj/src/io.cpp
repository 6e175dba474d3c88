#include "ddgrasp/io.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ddg {

namespace {

constexpr char kMagic[4] = {'D', 'D', 'H', 'M'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kChannels = 8;

void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::uint32_t get_u32(const std::string& s, std::size_t pos) {
  return static_cast<std::uint8_t>(s[pos]) |
         (static_cast<std::uint32_t>(static_cast<std::uint8_t>(s[pos + 1])) << 8) |
         (static_cast<std::uint32_t>(static_cast<std::uint8_t>(s[pos + 2])) << 16) |
         (static_cast<std::uint32_t>(static_cast<std::uint8_t>(s[pos + 3])) << 24);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

double parse_double(const std::string& tok, int line_no) {
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("line " + std::to_string(line_no) +
                             ": malformed number '" + tok + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

bool blank_or_comment(const std::string& line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

OrientedRect rect_from_vertices(const Point2 v[4], int plate_edge) {
  // plate_edge selects which edge of the loop is a gripper plate; the
  // opening axis is the perpendicular edge.
  Point2 plate = (plate_edge == 12) ? v[1] - v[0] : v[2] - v[1];
  Point2 open = (plate_edge == 12) ? v[2] - v[1] : v[1] - v[0];
  OrientedRect r;
  r.center = {0.25 * (v[0].x + v[1].x + v[2].x + v[3].x),
              0.25 * (v[0].y + v[1].y + v[2].y + v[3].y)};
  r.h = norm(plate);
  r.w = norm(open);
  r.theta = mod_pi(std::atan2(open.y, open.x));
  return r;
}

}  // namespace

AnnotationSet parse_cornell(const std::string& text, const CornellOptions& opts) {
  if (opts.plate_edge != 12 && opts.plate_edge != 23)
    throw std::invalid_argument("parse_cornell: plate_edge must be 12 or 23");
  AnnotationSet set;
  set.source = "cornell";

  std::vector<std::pair<Point2, int>> vertices;  // point + line number
  auto lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (blank_or_comment(lines[li])) continue;
    std::istringstream ss(lines[li]);
    std::string xs, ys, extra;
    if (!(ss >> xs >> ys) || (ss >> extra))
      throw std::runtime_error("line " + std::to_string(li + 1) +
                               ": expected 'x y'");
    int line_no = static_cast<int>(li + 1);
    // the public files contain literal NaN vertices; keep them so the
    // whole 4-line group can be skipped below
    auto parse_coord = [&](const std::string& tok) {
      if (tok == "NaN" || tok == "nan" || tok == "NAN")
        return std::numeric_limits<double>::quiet_NaN();
      return parse_double(tok, line_no);
    };
    vertices.push_back({{parse_coord(xs), parse_coord(ys)}, line_no});
  }
  if (vertices.size() % 4 != 0)
    throw std::runtime_error("cornell: vertex count " +
                             std::to_string(vertices.size()) +
                             " is not divisible by 4");
  for (std::size_t i = 0; i + 3 < vertices.size(); i += 4) {
    Point2 v[4];
    bool bad = false;
    for (int k = 0; k < 4; ++k) {
      v[k] = vertices[i + k].first;
      if (std::isnan(v[k].x) || std::isnan(v[k].y)) bad = true;
    }
    if (bad) {
      ++set.skipped;
      continue;
    }
    set.grasps.push_back(rect_from_vertices(v, opts.plate_edge));
  }
  return set;
}

AnnotationSet parse_jacquard(const std::string& text, const JacquardOptions& opts) {
  AnnotationSet set;
  set.source = "jacquard";
  auto lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (blank_or_comment(lines[li])) continue;
    int line_no = static_cast<int>(li + 1);
    auto fields = split(lines[li], ';');
    if (fields.size() != 5)
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": expected 5 ';'-separated fields");
    OrientedRect r;
    r.center.x = parse_double(fields[0], line_no);
    r.center.y = parse_double(fields[1], line_no);
    double deg = parse_double(fields[2], line_no);
    if (opts.theta_flip) deg = -deg;
    r.theta = mod_pi(deg * kPi / 180.0);
    r.w = parse_double(fields[3], line_no);
    r.h = parse_double(fields[4], line_no);
    if (r.w <= 0.0 || r.h <= 0.0)
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": non-positive opening or jaw");
    set.grasps.push_back(r);
  }
  return set;
}

std::string write_ddhm(const GraspMaps& maps) {
  std::string out;
  out.append(kMagic, 4);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(maps.rows()));
  put_u32(out, static_cast<std::uint32_t>(maps.cols()));
  put_u32(out, kChannels);
  put_u32(out, static_cast<std::uint32_t>(maps.stride));
  for (const Grid* g : maps.channels()) {
    for (double v : g->data())
      put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  }
  return out;
}

GraspMaps read_ddhm(const std::string& bytes) {
  if (bytes.size() < 24 || bytes.compare(0, 4, kMagic, 4) != 0)
    throw std::runtime_error("ddhm: bad magic");
  if (get_u32(bytes, 4) != kVersion) throw std::runtime_error("ddhm: bad version");
  std::uint32_t h = get_u32(bytes, 8);
  std::uint32_t w = get_u32(bytes, 12);
  if (get_u32(bytes, 16) != kChannels)
    throw std::runtime_error("ddhm: bad channel_count");
  std::uint32_t stride = get_u32(bytes, 20);
  if (h == 0 || w == 0 || stride == 0)
    throw std::runtime_error("ddhm: bad dimensions");
  std::size_t expect = 24 + 8ull * h * w * 4;
  if (bytes.size() != expect)
    throw std::runtime_error("ddhm: bad payload length");

  GraspMaps maps = GraspMaps::zeros(static_cast<int>(h), static_cast<int>(w),
                                    static_cast<int>(stride));
  std::size_t pos = 24;
  for (Grid* g : maps.channels()) {
    for (double& v : g->data()) {
      v = std::bit_cast<float>(get_u32(bytes, pos));
      pos += 4;
    }
  }
  for (const Grid* g : {&maps.fingertip_score, &maps.center_score})
    for (double v : g->data())
      if (!(v >= 0.0 && v <= 1.0))
        throw std::runtime_error("ddhm: score out of [0,1]");
  return maps;
}

std::string write_predictions(const PredictionFile& preds) {
  std::string out;
  char buf[256];
  for (const auto& [id, grasps] : preds) {
    if (grasps.empty()) {
      out += id + "\n";
      continue;
    }
    for (const ScoredGrasp& g : grasps) {
      std::snprintf(buf, sizeof buf, "%s %.6f %.6f %.6f %.6f %.6f\n", id.c_str(),
                    g.grasp.c1.x, g.grasp.c1.y, g.grasp.c2.x, g.grasp.c2.y, g.score);
      out += buf;
    }
  }
  return out;
}

PredictionFile read_predictions(const std::string& text) {
  PredictionFile out;
  auto index_of = [&](const std::string& id) -> std::vector<ScoredGrasp>& {
    for (auto& [k, v] : out)
      if (k == id) return v;
    out.push_back({id, {}});
    return out.back().second;
  };
  auto lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (blank_or_comment(lines[li])) continue;
    int line_no = static_cast<int>(li + 1);
    std::istringstream ss(lines[li]);
    std::vector<std::string> toks;
    std::string tok;
    while (ss >> tok) toks.push_back(tok);
    if (toks.size() == 1) {
      index_of(toks[0]);
      continue;
    }
    if (toks.size() != 6)
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": expected 'image_id x1 y1 x2 y2 score'");
    ScoredGrasp g;
    g.grasp.c1 = {parse_double(toks[1], line_no), parse_double(toks[2], line_no)};
    g.grasp.c2 = {parse_double(toks[3], line_no), parse_double(toks[4], line_no)};
    g.score = parse_double(toks[5], line_no);
    auto& list = index_of(toks[0]);
    if (!list.empty() && g.score > list.back().score)
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": not sorted (score increases)");
    list.push_back(g);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

std::string write_vertex_list(const std::vector<Point2>& vertices) {
  std::string out;
  char buf[96];
  for (const Point2& v : vertices) {
    std::snprintf(buf, sizeof buf, "%.6f %.6f\n", v.x, v.y);
    out += buf;
  }
  return out;
}

std::vector<Point2> parse_vertex_list(const std::string& text) {
  std::vector<Point2> out;
  auto lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (blank_or_comment(lines[li])) continue;
    int line_no = static_cast<int>(li + 1);
    std::istringstream ss(lines[li]);
    std::string xs, ys, extra;
    if (!(ss >> xs >> ys) || (ss >> extra))
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": expected 'x y'");
    out.push_back({parse_double(xs, line_no), parse_double(ys, line_no)});
  }
  return out;
}

}  // namespace ddg
