#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "gmmn/hanan.hpp"
#include "gmmn/rsa.hpp"

namespace gmmn {
namespace {

std::vector<Point> distinct_sorted(std::span<const Point> points) {
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

// Nearest-neighbour-per-octant candidates; contains an L1 MST.
std::vector<std::pair<std::size_t, std::size_t>> planar_candidates(const std::vector<Point>& pts) {
  std::vector<Rational> xs, ys;
  for (const auto& p : pts) {
    xs.push_back(p[0]);
    ys.push_back(p[1]);
  }
  std::vector<std::size_t> id(pts.size());
  std::vector<std::pair<std::size_t, std::size_t>> cand;
  for (int k = 0; k < 4; ++k) {
    std::iota(id.begin(), id.end(), 0);
    std::vector<Rational> key(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) key[i] = xs[i] + ys[i];
    std::stable_sort(id.begin(), id.end(), [&](std::size_t i, std::size_t j) { return key[i] < key[j]; });
    std::map<Rational, std::size_t> sweep;
    for (std::size_t i : id) {
      for (auto it = sweep.lower_bound(-ys[i]); it != sweep.end();) {
        const std::size_t j = it->second;
        if (ys[i] - ys[j] > xs[i] - xs[j]) break;
        cand.emplace_back(std::min(i, j), std::max(i, j));
        it = sweep.erase(it);
      }
      sweep[-ys[i]] = i;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (k & 1) {
        xs[i] = -xs[i];
      } else {
        std::swap(xs[i], ys[i]);
      }
    }
  }
  return cand;
}

}  // namespace

std::string to_string(SteinerBackend b) {
  return b == SteinerBackend::kMstRectilinear ? "mst" : "exact-small";
}

std::optional<SteinerBackend> parse_backend(std::string_view name) {
  if (name == "mst" || name == "mst-rectilinear") return SteinerBackend::kMstRectilinear;
  if (name == "exact-small" || name == "exact") return SteinerBackend::kExactSmall;
  return std::nullopt;
}

RectilinearNetwork SteinerTree::embed() const {
  std::vector<Segment> segs;
  for (const auto& [i, j] : edges) append_staircase(nodes[i], nodes[j], segs);
  return RectilinearNetwork(std::move(segs)).canonical();
}

SteinerTree rectilinear_mst(std::span<const Point> points) {
  SteinerTree tree;
  tree.nodes = distinct_sorted(points);
  const std::size_t n = tree.nodes.size();
  if (n <= 1) return tree;
  const auto& pts = tree.nodes;

  if (pts.front().dim() == 2) {
    auto cand = planar_candidates(pts);
    std::vector<std::tuple<Rational, std::size_t, std::size_t>> weighted;
    weighted.reserve(cand.size());
    for (auto [i, j] : cand) weighted.emplace_back(manhattan_distance(pts[i], pts[j]), i, j);
    std::sort(weighted.begin(), weighted.end());
    weighted.erase(std::unique(weighted.begin(), weighted.end()), weighted.end());
    DisjointSets sets(n);
    for (auto& [w, i, j] : weighted) {
      if (!sets.unite(i, j)) continue;
      tree.weight += w;
      tree.edges.emplace_back(i, j);
      if (tree.edges.size() + 1 == n) break;
    }
    if (tree.edges.size() + 1 != n) throw std::logic_error("planar MST candidates disconnected");
    return tree;
  }

  // Prim, ties broken by lower index.
  std::vector<bool> in_tree(n, false);
  std::vector<Rational> best(n);
  std::vector<std::size_t> link(n, 0);
  std::vector<bool> seen(n, false);
  in_tree[0] = true;
  for (std::size_t v = 1; v < n; ++v) {
    best[v] = manhattan_distance(pts[0], pts[v]);
    seen[v] = true;
  }
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && (pick == n || best[v] < best[pick])) pick = v;
    }
    in_tree[pick] = true;
    tree.weight += best[pick];
    tree.edges.emplace_back(std::min(link[pick], pick), std::max(link[pick], pick));
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      Rational d = manhattan_distance(pts[pick], pts[v]);
      if (d < best[v]) {
        best[v] = std::move(d);
        link[v] = pick;
      }
    }
  }
  return tree;
}

SteinerTree exact_hanan_steiner_tree(std::span<const Point> points) {
  const auto pts = distinct_sorted(points);
  SteinerTree tree;
  if (pts.size() <= 1) {
    tree.nodes = pts;
    return tree;
  }
  if (pts.size() > kExactSteinerMaxPoints) {
    throw std::length_error("exact-small backend: more than " + std::to_string(kExactSteinerMaxPoints) + " points");
  }
  const HananGrid grid = HananGrid::of(pts);
  if (grid.vertex_count() > kExactSteinerMaxGridVertices) {
    throw std::length_error("exact-small backend: Hanan grid too large");
  }
  WeightedDigraph graph(grid.vertex_count());
  for (const auto& [lo, hi, axis] : grid.edges()) {
    Rational w = grid.point(hi)[axis] - grid.point(lo)[axis];
    graph.add_arc(lo, hi, w);
    graph.add_arc(hi, lo, std::move(w));
  }
  const std::size_t root = grid.locate(pts.front());
  std::vector<std::size_t> terms;
  for (std::size_t i = 1; i < pts.size(); ++i) terms.push_back(grid.locate(pts[i]));
  auto arb = min_steiner_arborescence(graph, root, terms);
  if (!arb) throw std::logic_error("Hanan grid disconnected");

  std::map<std::size_t, std::size_t> local;
  auto node = [&](std::size_t gid) {
    auto [it, inserted] = local.try_emplace(gid, tree.nodes.size());
    if (inserted) tree.nodes.push_back(grid.point(gid));
    return it->second;
  };
  for (std::size_t gid : terms) node(gid);
  node(root);
  for (const auto& [u, v] : arb->arcs) {
    const std::size_t a = node(u), b = node(v);
    tree.edges.emplace_back(std::min(a, b), std::max(a, b));
    tree.weight += manhattan_distance(tree.nodes[a], tree.nodes[b]);
  }
  return tree;
}

SteinerTree steiner_tree(std::span<const Point> points, SteinerBackend backend) {
  if (points.empty()) throw std::invalid_argument("steiner_tree: empty point set");
  return backend == SteinerBackend::kMstRectilinear ? rectilinear_mst(points) : exact_hanan_steiner_tree(points);
}

RectilinearNetwork steiner_network(std::span<const Point> points, SteinerBackend backend) {
  return steiner_tree(points, backend).embed();
}

}  // namespace gmmn
