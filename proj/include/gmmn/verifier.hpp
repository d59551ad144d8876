#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gmmn/geometry.hpp"

namespace gmmn {

/// Planar-style arrangement of a rectilinear network: vertices at segment
/// endpoints, crossings and registered query points; edges between
/// consecutive vertices on each canonical segment.
class ArrangementGraph {
 public:
  struct Edge {
    int to;
    int axis;
    int dir;  // +1 or -1 along `axis`
    Rational length;
  };

  /// Query points lying on the network become vertices; others are ignored.
  ArrangementGraph(const RectilinearNetwork& net, std::span<const Point> query_points = {});

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const;
  const Point& vertex(int id) const { return vertices_[static_cast<std::size_t>(id)]; }
  const std::vector<Edge>& edges(int id) const { return adj_[static_cast<std::size_t>(id)]; }
  std::optional<int> find(const Point& p) const;
  Rational total_edge_length() const;

  /// Monotone search from `from` to `to`; every move goes toward `to` in its axis
  /// and never overshoots. Returns the vertex path if one exists.
  std::optional<std::vector<int>> monotone_path(int from, int to) const;

 private:
  int intern(const Point& p);

  std::vector<Point> vertices_;
  std::unordered_map<Point, int, PointHash> index_;
  std::vector<std::vector<Edge>> adj_;
};

enum class Violation { kTerminalOffNetwork, kNoMonotonePath };

std::string to_string(Violation v);

struct PairViolation {
  std::size_t pair_index;
  Violation kind;
};

struct FeasibilityReport {
  std::size_t pair_count = 0;
  std::vector<PairViolation> violations;

  bool feasible() const { return violations.empty(); }
};

bool has_m_path(const RectilinearNetwork& net, const Point& t, const Point& t2);
FeasibilityReport verify_instance(const RectilinearNetwork& net, const Instance& inst);

}  // namespace gmmn
