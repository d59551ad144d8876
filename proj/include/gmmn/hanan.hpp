#pragma once

#include <cstddef>
#include <optional>
#include <tuple>
#include <span>
#include <utility>
#include <vector>

#include "gmmn/geometry.hpp"

namespace gmmn {

/// Grid induced by axis-parallel hyperplanes through every given coordinate.
struct HananGrid {
  std::vector<std::vector<Rational>> axes;  // sorted, distinct, per axis

  /// Grid of `points`; with `include_origin` the coordinate 0 is added on every axis.
  static HananGrid of(std::span<const Point> points, bool include_origin = false);

  int dim() const { return static_cast<int>(axes.size()); }
  std::size_t vertex_count() const;
  std::size_t max_axis_size() const;
  Point point(std::size_t id) const;
  /// Id of a point lying on the grid; throws std::out_of_range otherwise.
  std::size_t locate(const Point& p) const;
  /// Neighbour along `axis` in the increasing direction, if any.
  std::optional<std::size_t> step_up(std::size_t id, int axis) const;
  /// All grid edges as (lower, upper, axis), lower < upper along `axis`.
  std::vector<std::tuple<std::size_t, std::size_t, int>> edges() const;

 private:
  std::size_t stride(int axis) const;
  std::size_t coord_index(std::size_t id, int axis) const;
};

/// Weighted digraph used by the exact Steiner searches.
struct WeightedDigraph {
  struct Arc {
    std::size_t to;
    Rational weight;
  };
  std::vector<std::vector<Arc>> out;

  explicit WeightedDigraph(std::size_t n) : out(n) {}
  void add_arc(std::size_t from, std::size_t to, Rational w) { out[from].push_back({to, std::move(w)}); }
};

struct SteinerArborescence {
  Rational cost;
  std::vector<std::pair<std::size_t, std::size_t>> arcs;  // directed away from the root
};

/// Dreyfus-Wagner: cheapest subgraph in which every terminal is reachable from `root`.
/// Returns nullopt if some terminal is unreachable.
std::optional<SteinerArborescence> min_steiner_arborescence(const WeightedDigraph& graph, std::size_t root,
                                                            std::span<const std::size_t> terminals);

}  // namespace gmmn
