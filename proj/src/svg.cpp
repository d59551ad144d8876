#include "gmmn/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace gmmn {

namespace {

std::string num(double v) {
  if (v == 0) v = 0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::vector<std::vector<Point>> network_polylines(const RectilinearNetwork& net) {
  const auto& segs = net.segments();
  std::vector<Point> pts;
  std::unordered_map<Point, std::size_t, PointHash> id;
  std::vector<std::vector<std::size_t>> incident;
  auto intern = [&](const Point& p) {
    auto [it, fresh] = id.emplace(p, pts.size());
    if (fresh) {
      pts.push_back(p);
      incident.emplace_back();
    }
    return it->second;
  };
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    const std::size_t a = intern(segs[s].a);
    const std::size_t b = intern(segs[s].b);
    ends.emplace_back(a, b);
    incident[a].push_back(s);
    incident[b].push_back(s);
  }

  std::vector<bool> used(segs.size(), false);
  std::vector<std::vector<Point>> out;
  auto walk = [&](std::size_t v, std::size_t s) {
    std::vector<Point> line{pts[v]};
    while (true) {
      used[s] = true;
      const std::size_t u = ends[s].first == v ? ends[s].second : ends[s].first;
      line.push_back(pts[u]);
      if (incident[u].size() != 2) break;
      const std::size_t next = incident[u][0] == s ? incident[u][1] : incident[u][0];
      if (used[next]) break;
      s = next;
      v = u;
    }
    out.push_back(std::move(line));
  };
  for (std::size_t v = 0; v < pts.size(); ++v) {
    if (incident[v].size() == 2) continue;
    for (std::size_t s : incident[v]) {
      if (!used[s]) walk(v, s);
    }
  }
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (!used[s]) walk(ends[s].first, s);
  }
  return out;
}

std::string render_svg(const Instance& inst, const RectilinearNetwork* network, const SvgOptions& options) {
  if (inst.dim != 2) throw std::invalid_argument("render needs d = 2");
  if (inst.empty()) throw std::invalid_argument("render needs a nonempty instance");

  double min_x = inst.pairs.front().first[0].to_double(), max_x = min_x;
  double min_y = inst.pairs.front().first[1].to_double(), max_y = min_y;
  auto grow = [&](const Point& p) {
    min_x = std::min(min_x, p[0].to_double());
    max_x = std::max(max_x, p[0].to_double());
    min_y = std::min(min_y, p[1].to_double());
    max_y = std::max(max_y, p[1].to_double());
  };
  for (const auto& p : inst.pairs) {
    grow(p.first);
    grow(p.second);
  }
  if (network) {
    for (const auto& s : network->segments()) {
      grow(s.a);
      grow(s.b);
    }
  }
  double extent = std::max(max_x - min_x, max_y - min_y);
  if (extent <= 0) extent = 1;
  const double margin = 0.05 * extent;
  const double vx = min_x - margin, vy = -max_y - margin;
  const double vw = max_x - min_x + 2 * margin, vh = max_y - min_y + 2 * margin;
  const double dot = 0.008 * extent;
  const double font = 0.03 * extent;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(vx) << ' ' << num(vy) << ' ' << num(vw) << ' '
     << num(vh) << "\" width=\"800\" height=\"" << num(800 * vh / vw) << "\">\n";

  os << "<g class=\"boxes\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"4 3\">\n";
  for (const auto& b : inst.boxes()) {
    const double x0 = b.lo[0].to_double(), y1 = b.hi[1].to_double();
    os << "<rect x=\"" << num(x0) << "\" y=\"" << num(-y1) << "\" width=\"" << num(b.hi[0].to_double() - x0)
       << "\" height=\"" << num(y1 - b.lo[1].to_double()) << "\" vector-effect=\"non-scaling-stroke\"/>\n";
  }
  os << "</g>\n";

  if (options.show_separators && !inst.separators.empty()) {
    os << "<g class=\"separators\" stroke=\"#cc6600\" stroke-width=\"1\" stroke-dasharray=\"8 4\">\n";
    const double sx = inst.separators[0].to_double();
    os << "<line x1=\"" << num(sx) << "\" y1=\"" << num(vy) << "\" x2=\"" << num(sx) << "\" y2=\"" << num(vy + vh)
       << "\" vector-effect=\"non-scaling-stroke\"/>\n";
    if (inst.separators.size() > 1) {
      const double sy = -inst.separators[1].to_double();
      os << "<line x1=\"" << num(vx) << "\" y1=\"" << num(sy) << "\" x2=\"" << num(vx + vw) << "\" y2=\"" << num(sy)
         << "\" vector-effect=\"non-scaling-stroke\"/>\n";
    }
    os << "</g>\n";
  }

  if (network && !network->empty()) {
    os << "<g class=\"network\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\" stroke-linejoin=\"round\">\n";
    for (const auto& line : network_polylines(*network)) {
      os << "<polyline points=\"";
      for (std::size_t i = 0; i < line.size(); ++i) {
        os << (i ? " " : "") << num(line[i][0].to_double()) << ',' << num(-line[i][1].to_double());
      }
      os << "\" vector-effect=\"non-scaling-stroke\"/>\n";
    }
    os << "</g>\n";
  }

  os << "<g class=\"terminals\" fill=\"#b22222\">\n";
  for (std::size_t k = 0; k < inst.pairs.size(); ++k) {
    for (const Point* p : {&inst.pairs[k].first, &inst.pairs[k].second}) {
      const double x = (*p)[0].to_double(), y = -(*p)[1].to_double();
      os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(dot) << "\"/>\n";
      if (options.label_pairs) {
        os << "<text x=\"" << num(x + dot) << "\" y=\"" << num(y - dot) << "\" font-size=\"" << num(font) << "\">" << k
           << "</text>\n";
      }
    }
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace gmmn
