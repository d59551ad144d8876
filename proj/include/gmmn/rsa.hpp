#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gmmn/geometry.hpp"

namespace gmmn {

enum class SteinerBackend { kMstRectilinear, kExactSmall };

std::string to_string(SteinerBackend b);
/// Accepts "mst" / "mst-rectilinear" and "exact-small".
std::optional<SteinerBackend> parse_backend(std::string_view name);

/// Size caps for the exact Hanan-grid Steiner backend.
inline constexpr std::size_t kExactSteinerMaxPoints = 9;
inline constexpr std::size_t kExactSteinerMaxGridVertices = 4096;

/// Rectilinear Steiner tree given as an abstract tree over `nodes`; every edge is
/// embedded as the canonical staircase between its endpoints.
struct SteinerTree {
  std::vector<Point> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  Rational weight;  // sum of edge L1 lengths

  RectilinearNetwork embed() const;
};

/// Tree spanning `points` (duplicates ignored). Throws std::length_error when the
/// exact backend's caps are exceeded.
SteinerTree steiner_tree(std::span<const Point> points, SteinerBackend backend);
RectilinearNetwork steiner_network(std::span<const Point> points, SteinerBackend backend);

/// Candidate-edge L1 minimum spanning tree; O(n log n) in the plane, O(n^2) otherwise.
SteinerTree rectilinear_mst(std::span<const Point> points);

/// Minimum tree on the Hanan grid of `points` (Dreyfus-Wagner).
SteinerTree exact_hanan_steiner_tree(std::span<const Point> points);

struct RsaInstance {
  std::vector<Point> terminals;
  Point root;
};

/// Componentwise median of (t, t2, o): a common point of B(o,t), B(o,t2), B(t,t2).
Point helly_min_point(const Point& t, const Point& t2, const Point& o);

/// Staircase from `a` to `b` (axes in order 0..d-1), optionally routed through `via`.
/// Throws std::invalid_argument if `via` lies outside the bounding box of a and b.
RectilinearNetwork canonical_m_path(const Point& a, const Point& b, const std::optional<Point>& via = std::nullopt);

/// Appends the staircase segments from `a` to `b` to `out`.
void append_staircase(const Point& a, const Point& b, std::vector<Segment>& out);

struct RsaResult {
  RectilinearNetwork network;  // canonical
  Rational tree_weight;        // ||B|| of the Steiner tree the tour came from
  std::size_t point_count = 0; // |T u {o}| after dedup
  int depth = 0;               // shortcutting levels
  std::vector<Rational> level_costs;  // summed path length kept per level
  Rational initial_tour_length;       // shortcut cycle length on level 0
};

/// Euler-tour shortcutting arborescence. Checks, and throws std::logic_error on
/// violation of, ||A|| <= ceil(log2 n) * ||B|| and depth <= ceil(log2(|T|+1)).
RsaResult rsa_shortcut(const RsaInstance& inst, SteinerBackend backend);

/// Terminal order of the doubled-tree Euler tour: first visits of a DFS from
/// `root`, children in lexicographic point order. Only points in `terminals` are reported.
std::vector<Point> euler_terminal_order(const SteinerTree& tree, const Point& root,
                                        std::span<const Point> terminals);

inline constexpr std::size_t kExactRsaMaxTerminals = 5;
inline constexpr std::size_t kExactRsaMaxGridPerAxis = 7;

/// Minimum RSA network on the Hanan grid of T u {o}. Throws std::length_error above caps.
RectilinearNetwork exact_rsa(const RsaInstance& inst);

}  // namespace gmmn
