#include "gmmn/geometry.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace gmmn {

std::string Point::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ',';
    os << coords[i];
  }
  os << ')';
  return os.str();
}

std::strong_ordering operator<=>(const Point& a, const Point& b) {
  const std::size_t n = std::min(a.coords.size(), b.coords.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.coords[i] <=> b.coords[i]; c != 0) return c;
  }
  return a.coords.size() <=> b.coords.size();
}

std::size_t PointHash::operator()(const Point& p) const {
  std::size_t h = 0x345678;
  for (const auto& c : p.coords) h = h * 1000003 ^ c.hash();
  return h;
}

Rational manhattan_distance(const Point& p, const Point& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("manhattan_distance: dimension mismatch");
  Rational sum;
  for (int i = 0; i < p.dim(); ++i) sum += (p[i] - q[i]).abs();
  return sum;
}

Box Box::of(const TerminalPair& pair) {
  if (pair.first.dim() != pair.second.dim()) throw std::invalid_argument("pair dimension mismatch");
  Box box{pair.first, pair.first, pair};
  for (int i = 0; i < pair.first.dim(); ++i) {
    box.lo[i] = min(pair.first[i], pair.second[i]);
    box.hi[i] = max(pair.first[i], pair.second[i]);
  }
  return box;
}

bool Box::contains(const Point& p) const {
  for (int i = 0; i < dim(); ++i) {
    if (p[i] < lo[i] || hi[i] < p[i]) return false;
  }
  return true;
}

Segment Segment::between(const Point& p, const Point& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("segment endpoints differ in dimension");
  int axis = -1;
  for (int i = 0; i < p.dim(); ++i) {
    if (p[i] != q[i]) {
      if (axis >= 0) throw std::invalid_argument("segment is not axis-parallel: " + p.to_string() + " " + q.to_string());
      axis = i;
    }
  }
  if (axis < 0) return Segment{p, q, 0};
  if (q[axis] < p[axis]) return Segment{q, p, axis};
  return Segment{p, q, axis};
}

bool Segment::contains(const Point& p) const {
  if (p.dim() != a.dim()) return false;
  for (int i = 0; i < p.dim(); ++i) {
    if (i == axis) {
      if (p[i] < a[i] || b[i] < p[i]) return false;
    } else if (p[i] != a[i]) {
      return false;
    }
  }
  return true;
}

namespace {

// Orders by axis, then the fixed coordinates of the supporting line, then start.
bool line_order(const Segment& s, const Segment& t) {
  if (s.axis != t.axis) return s.axis < t.axis;
  for (int i = 0; i < s.a.dim(); ++i) {
    if (i == s.axis) continue;
    if (auto c = s.a[i] <=> t.a[i]; c != 0) return c < 0;
  }
  return s.a[s.axis] < t.a[t.axis];
}

bool same_line(const Segment& s, const Segment& t) {
  if (s.axis != t.axis || s.a.dim() != t.a.dim()) return false;
  for (int i = 0; i < s.a.dim(); ++i) {
    if (i != s.axis && s.a[i] != t.a[i]) return false;
  }
  return true;
}

}  // namespace

void RectilinearNetwork::add(const RectilinearNetwork& other) {
  segments_.insert(segments_.end(), other.segments_.begin(), other.segments_.end());
}

RectilinearNetwork RectilinearNetwork::canonical() const {
  std::vector<Segment> segs;
  segs.reserve(segments_.size());
  for (const auto& s : segments_) {
    if (!s.degenerate()) segs.push_back(s);
  }
  std::sort(segs.begin(), segs.end(), line_order);
  std::vector<Segment> out;
  out.reserve(segs.size());
  for (auto& s : segs) {
    if (!out.empty() && same_line(out.back(), s) && s.a[s.axis] <= out.back().b[s.axis]) {
      if (out.back().b[s.axis] < s.b[s.axis]) out.back().b = std::move(s.b);
      continue;
    }
    out.push_back(std::move(s));
  }
  return RectilinearNetwork(std::move(out));
}

Rational RectilinearNetwork::length() const {
  Rational total;
  for (const auto& s : canonical().segments_) total += s.length();
  return total;
}

bool RectilinearNetwork::contains(const Point& p) const {
  return std::any_of(segments_.begin(), segments_.end(), [&](const Segment& s) { return s.contains(p); });
}

RectilinearNetwork canonicalize(const RectilinearNetwork& net) { return net.canonical(); }
Rational network_length(const RectilinearNetwork& net) { return net.length(); }

RectilinearNetwork network_union(const RectilinearNetwork& a, const RectilinearNetwork& b) {
  RectilinearNetwork u = a;
  u.add(b);
  return u.canonical();
}

std::vector<Box> Instance::boxes() const {
  std::vector<Box> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(Box::of(p));
  return out;
}

std::vector<Point> Instance::terminals() const {
  std::vector<Point> pts;
  pts.reserve(2 * pairs.size());
  for (const auto& p : pairs) {
    pts.push_back(p.first);
    pts.push_back(p.second);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

void Instance::validate() const {
  if (dim < 1) throw std::invalid_argument("instance dimension must be >= 1");
  if (separators.size() > static_cast<std::size_t>(dim)) {
    throw std::invalid_argument("more separators than dimensions");
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& p = pairs[k];
    if (p.first.dim() != dim || p.second.dim() != dim) {
      throw std::invalid_argument("pair " + std::to_string(k) + " has wrong dimension");
    }
    for (std::size_t i = 0; i < separators.size(); ++i) {
      const int ax = static_cast<int>(i);
      const Rational& s = separators[i];
      if (s < min(p.first[ax], p.second[ax]) || max(p.first[ax], p.second[ax]) < s) {
        throw std::invalid_argument("pair " + std::to_string(k) + " not separated on axis " + std::to_string(i));
      }
    }
  }
}

std::size_t Instance::normalize() {
  std::set<std::pair<Point, Point>> seen;
  std::vector<TerminalPair> kept;
  kept.reserve(pairs.size());
  for (auto& p : pairs) {
    if (p.first == p.second) continue;
    auto key = p.first < p.second ? std::make_pair(p.first, p.second) : std::make_pair(p.second, p.first);
    if (!seen.insert(std::move(key)).second) continue;
    kept.push_back(std::move(p));
  }
  const std::size_t dropped = pairs.size() - kept.size();
  pairs = std::move(kept);
  return dropped;
}

AffineMap::AffineMap(std::vector<Rational> scale, Point translate)
    : scale_(std::move(scale)), translate_(std::move(translate)) {
  if (scale_.size() != translate_.coords.size()) throw std::invalid_argument("affine map dimension mismatch");
  for (const auto& s : scale_) {
    if (s.sign() <= 0) throw std::invalid_argument("scale factors must be positive");
  }
}

AffineMap AffineMap::translation(const Point& offset) {
  return AffineMap(std::vector<Rational>(offset.coords.size(), Rational(1)), offset);
}

AffineMap AffineMap::uniform(int dim, const Rational& factor, const Point& offset) {
  return AffineMap(std::vector<Rational>(static_cast<std::size_t>(dim), factor), offset);
}

Rational AffineMap::apply(int axis, const Rational& v) const {
  const auto i = static_cast<std::size_t>(axis);
  return scale_[i] * v + translate_.coords[i];
}

Point AffineMap::operator()(const Point& p) const {
  if (p.dim() != translate_.dim()) throw std::invalid_argument("affine map dimension mismatch");
  Point out = p;
  for (int i = 0; i < p.dim(); ++i) out[i] = apply(i, p[i]);
  return out;
}

Segment AffineMap::operator()(const Segment& s) const { return Segment{(*this)(s.a), (*this)(s.b), s.axis}; }

Box AffineMap::operator()(const Box& b) const { return Box{(*this)(b.lo), (*this)(b.hi), (*this)(b.pair)}; }

TerminalPair AffineMap::operator()(const TerminalPair& p) const {
  return TerminalPair{(*this)(p.first), (*this)(p.second)};
}

RectilinearNetwork AffineMap::operator()(const RectilinearNetwork& n) const {
  std::vector<Segment> segs;
  segs.reserve(n.size());
  for (const auto& s : n.segments()) segs.push_back((*this)(s));
  return RectilinearNetwork(std::move(segs));
}

Instance AffineMap::operator()(const Instance& inst) const {
  Instance out;
  out.dim = inst.dim;
  out.pairs.reserve(inst.pairs.size());
  for (const auto& p : inst.pairs) out.pairs.push_back((*this)(p));
  for (std::size_t i = 0; i < inst.separators.size(); ++i) {
    out.separators.push_back(apply(static_cast<int>(i), inst.separators[i]));
  }
  return out;
}

}  // namespace gmmn
