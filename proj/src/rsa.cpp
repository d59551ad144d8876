#include "gmmn/rsa.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "gmmn/hanan.hpp"
#include "gmmn/verifier.hpp"

namespace gmmn {

Point helly_min_point(const Point& t, const Point& t2, const Point& o) {
  if (t.dim() != t2.dim() || t.dim() != o.dim()) throw std::invalid_argument("helly_min_point: dimension mismatch");
  Point m = o;
  for (int i = 0; i < o.dim(); ++i) m[i] = median3(t[i], t2[i], o[i]);
  return m;
}

void append_staircase(const Point& a, const Point& b, std::vector<Segment>& out) {
  if (a.dim() != b.dim()) throw std::invalid_argument("staircase endpoints differ in dimension");
  Point cur = a;
  for (int i = 0; i < a.dim(); ++i) {
    if (cur[i] == b[i]) continue;
    Point next = cur;
    next[i] = b[i];
    out.push_back(Segment::between(cur, next));
    cur = std::move(next);
  }
}

RectilinearNetwork canonical_m_path(const Point& a, const Point& b, const std::optional<Point>& via) {
  std::vector<Segment> segs;
  if (via) {
    if (!Box::of(TerminalPair{a, b}).contains(*via)) {
      throw std::invalid_argument("canonical_m_path: via point " + via->to_string() + " outside bounding box");
    }
    append_staircase(a, *via, segs);
    append_staircase(*via, b, segs);
  } else {
    append_staircase(a, b, segs);
  }
  return RectilinearNetwork(std::move(segs)).canonical();
}

std::vector<Point> euler_terminal_order(const SteinerTree& tree, const Point& root, std::span<const Point> terminals) {
  const std::size_t n = tree.nodes.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [a, b] : tree.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& nb : adj) {
    std::sort(nb.begin(), nb.end(), [&](std::size_t u, std::size_t v) { return tree.nodes[u] < tree.nodes[v]; });
  }
  auto root_it = std::find(tree.nodes.begin(), tree.nodes.end(), root);
  if (root_it == tree.nodes.end()) throw std::invalid_argument("euler_terminal_order: root not in tree");

  std::vector<Point> wanted(terminals.begin(), terminals.end());
  std::sort(wanted.begin(), wanted.end());
  std::vector<Point> order;
  std::vector<bool> visited(n, false);
  std::vector<std::size_t> stack{static_cast<std::size_t>(root_it - tree.nodes.begin())};
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (visited[v]) continue;
    visited[v] = true;
    if (std::binary_search(wanted.begin(), wanted.end(), tree.nodes[v])) order.push_back(tree.nodes[v]);
    for (auto it = adj[v].rbegin(); it != adj[v].rend(); ++it) {
      if (!visited[*it]) stack.push_back(*it);
    }
  }
  return order;
}

RsaResult rsa_shortcut(const RsaInstance& inst, SteinerBackend backend) {
  const Point& o = inst.root;
  std::vector<Point> pts;
  pts.reserve(inst.terminals.size() + 1);
  for (const auto& t : inst.terminals) {
    if (t.dim() != o.dim()) throw std::invalid_argument("rsa_shortcut: dimension mismatch");
    pts.push_back(t);
  }
  pts.push_back(o);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t distinct_terminals =
      pts.size() - (std::find(inst.terminals.begin(), inst.terminals.end(), o) == inst.terminals.end() ? 1 : 0);

  RsaResult result;
  result.point_count = pts.size();
  if (pts.size() <= 1) return result;

  const SteinerTree tree = steiner_tree(pts, backend);
  result.tree_weight = tree.weight;
  std::vector<Point> cycle = euler_terminal_order(tree, o, pts);
  if (cycle.size() != pts.size() || cycle.front() != o) throw std::logic_error("Euler tour missed a terminal");

  for (std::size_t i = 0; i < cycle.size(); ++i) {
    result.initial_tour_length += manhattan_distance(cycle[i], cycle[(i + 1) % cycle.size()]);
  }
  if (Rational(2) * tree.weight < result.initial_tour_length) {
    throw std::logic_error("shortcut tour longer than the doubled tree");
  }

  std::vector<Segment> segs;
  while (cycle.size() > 1) {
    const std::size_t m = cycle.size();
    Rational half[2];
    for (std::size_t i = 0; i < m; ++i) half[i % 2] += manhattan_distance(cycle[i], cycle[(i + 1) % m]);
    const std::size_t parity = half[1] < half[0] ? 1 : 0;

    std::vector<Point> next;
    if (parity == 1 && m % 2 == 1) next.push_back(cycle[0]);
    for (std::size_t i = parity; i < m; i += 2) {
      const Point& a = cycle[i];
      const Point& b = cycle[(i + 1) % m];
      Point q = helly_min_point(a, b, o);
      append_staircase(a, q, segs);
      append_staircase(q, b, segs);
      next.push_back(std::move(q));
    }
    if (tree.weight < half[parity]) throw std::logic_error("kept half longer than the Steiner tree");
    result.level_costs.push_back(half[parity]);
    ++result.depth;

    std::unordered_set<Point, PointHash> seen;
    std::vector<Point> deduped;
    for (auto& p : next) {
      if (seen.insert(p).second) deduped.push_back(std::move(p));
    }
    if (!seen.contains(o)) deduped.push_back(o);
    cycle = std::move(deduped);
  }

  result.network = RectilinearNetwork(std::move(segs)).canonical();
  const Rational bound = Rational(static_cast<long long>(ceil_log2(pts.size()))) * tree.weight;
  if (bound < result.network.length()) throw std::logic_error("arborescence exceeds ceil(log2 n) * ||B||");
  if (result.depth > ceil_log2(distinct_terminals + 1)) throw std::logic_error("shortcutting recursed too deep");
  return result;
}

RectilinearNetwork exact_rsa(const RsaInstance& inst) {
  const Point& o = inst.root;
  std::vector<Point> terms;
  for (const auto& t : inst.terminals) {
    if (t.dim() != o.dim()) throw std::invalid_argument("exact_rsa: dimension mismatch");
    if (t != o) terms.push_back(t);
  }
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  if (terms.empty()) return {};
  if (terms.size() > kExactRsaMaxTerminals) throw std::length_error("exact_rsa: too many terminals");

  std::vector<Point> all = terms;
  all.push_back(o);
  const HananGrid grid = HananGrid::of(all);
  if (grid.max_axis_size() > kExactRsaMaxGridPerAxis) throw std::length_error("exact_rsa: Hanan grid too large");

  // Arcs point away from the root; every root-to-terminal walk is then monotone.
  WeightedDigraph graph(grid.vertex_count());
  for (const auto& [lo, hi, axis] : grid.edges()) {
    const Rational a = grid.point(lo)[axis];
    const Rational b = grid.point(hi)[axis];
    if (o[axis] <= a) {
      graph.add_arc(lo, hi, b - a);
    } else {
      graph.add_arc(hi, lo, b - a);
    }
  }
  std::vector<std::size_t> ids;
  for (const auto& t : terms) ids.push_back(grid.locate(t));
  auto arb = min_steiner_arborescence(graph, grid.locate(o), ids);
  if (!arb) throw std::logic_error("exact_rsa: terminal unreachable on Hanan grid");

  std::vector<Segment> segs;
  for (const auto& [u, v] : arb->arcs) segs.push_back(Segment::between(grid.point(u), grid.point(v)));
  RectilinearNetwork net = RectilinearNetwork(std::move(segs)).canonical();

  Instance check;
  check.dim = o.dim();
  for (const auto& t : terms) check.pairs.push_back({t, o});
  if (!verify_instance(net, check).feasible()) throw std::logic_error("exact_rsa produced an infeasible network");
  return net;
}

}  // namespace gmmn
