#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "gmmn/rational.hpp"

namespace gmmn {

/// Point in R^d with exact coordinates.
struct Point {
  std::vector<Rational> coords;

  Point() = default;
  explicit Point(std::vector<Rational> c) : coords(std::move(c)) {}
  Point(std::initializer_list<Rational> c) : coords(c) {}

  /// Origin of R^d.
  static Point zero(int dim) { return Point(std::vector<Rational>(static_cast<std::size_t>(dim))); }

  int dim() const { return static_cast<int>(coords.size()); }
  const Rational& operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
  Rational& operator[](int i) { return coords[static_cast<std::size_t>(i)]; }

  std::string to_string() const;

  friend bool operator==(const Point&, const Point&) = default;
  /// Lexicographic.
  friend std::strong_ordering operator<=>(const Point& a, const Point& b);
};

struct PointHash {
  std::size_t operator()(const Point& p) const;
};

Rational manhattan_distance(const Point& p, const Point& q);

/// Unordered terminal pair; `first`/`second` keep input order.
struct TerminalPair {
  Point first;
  Point second;

  friend bool operator==(const TerminalPair&, const TerminalPair&) = default;
};

/// Axis-aligned bounding box of a terminal pair.
struct Box {
  Point lo;
  Point hi;
  TerminalPair pair;

  static Box of(const TerminalPair& pair);
  int dim() const { return lo.dim(); }
  bool contains(const Point& p) const;
};

/// Closed axis-parallel segment. `a[axis] <= b[axis]`, all other coordinates equal.
struct Segment {
  Point a;
  Point b;
  int axis = 0;

  /// Builds a segment between two points differing in at most one coordinate.
  /// Throws std::invalid_argument otherwise. Equal points yield axis 0, zero length.
  static Segment between(const Point& p, const Point& q);

  Rational length() const { return b[axis] - a[axis]; }
  bool degenerate() const { return a == b; }
  bool contains(const Point& p) const;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Set of closed axis-parallel segments. The measured length is that of the union.
class RectilinearNetwork {
 public:
  RectilinearNetwork() = default;
  explicit RectilinearNetwork(std::vector<Segment> segments) : segments_(std::move(segments)) {}

  const std::vector<Segment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }
  std::size_t size() const { return segments_.size(); }

  void add(Segment s) { segments_.push_back(std::move(s)); }
  void add(const RectilinearNetwork& other);

  /// Segments on each line merged into maximal disjoint runs; zero-length ones dropped;
  /// sorted by (axis, line, start).
  RectilinearNetwork canonical() const;
  Rational length() const;
  bool contains(const Point& p) const;

  friend bool operator==(const RectilinearNetwork&, const RectilinearNetwork&) = default;

 private:
  std::vector<Segment> segments_;
};

RectilinearNetwork canonicalize(const RectilinearNetwork& net);
Rational network_length(const RectilinearNetwork& net);
RectilinearNetwork network_union(const RectilinearNetwork& a, const RectilinearNetwork& b);

/// Terminal pairs in d dimensions, optionally j-separated by s_1..s_j.
struct Instance {
  int dim = 2;
  std::vector<TerminalPair> pairs;
  std::vector<Rational> separators;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
  std::vector<Box> boxes() const;
  /// Distinct terminals, lexicographically sorted.
  std::vector<Point> terminals() const;

  /// Throws std::invalid_argument if a pair has the wrong dimension or a
  /// separator does not weakly separate some pair.
  void validate() const;
  /// Drops degenerate pairs (t == t') and duplicates (either orientation). Returns drop count.
  std::size_t normalize();

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// x -> scale * x + translate, per axis. Scale factors must be positive.
class AffineMap {
 public:
  AffineMap(std::vector<Rational> scale, Point translate);
  static AffineMap translation(const Point& offset);
  static AffineMap uniform(int dim, const Rational& factor, const Point& offset);

  Rational apply(int axis, const Rational& v) const;
  Point operator()(const Point& p) const;
  Segment operator()(const Segment& s) const;
  Box operator()(const Box& b) const;
  TerminalPair operator()(const TerminalPair& p) const;
  RectilinearNetwork operator()(const RectilinearNetwork& n) const;
  Instance operator()(const Instance& inst) const;

 private:
  std::vector<Rational> scale_;
  Point translate_;
};

}  // namespace gmmn
