#include "gmmn/verifier.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace gmmn {
namespace {

// Coordinates of `p` with axes `skip1`/`skip2` removed.
Point project_out(const Point& p, int skip1, int skip2) {
  Point out;
  out.coords.reserve(p.coords.size());
  for (int i = 0; i < p.dim(); ++i) {
    if (i != skip1 && i != skip2) out.coords.push_back(p[i]);
  }
  return out;
}

}  // namespace

ArrangementGraph::ArrangementGraph(const RectilinearNetwork& net, std::span<const Point> query_points) {
  const RectilinearNetwork canon = net.canonical();
  const auto& segs = canon.segments();
  std::vector<std::vector<Rational>> stops(segs.size());
  for (std::size_t k = 0; k < segs.size(); ++k) {
    stops[k] = {segs[k].a[segs[k].axis], segs[k].b[segs[k].axis]};
  }

  const int dim = segs.empty() ? 0 : segs.front().a.dim();

  // Crossings between segments of axes p < q sharing all other coordinates.
  for (int p = 0; p < dim; ++p) {
    for (int q = p + 1; q < dim; ++q) {
      std::map<Point, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> groups;
      for (std::size_t k = 0; k < segs.size(); ++k) {
        if (segs[k].axis == p) groups[project_out(segs[k].a, p, q)].first.push_back(k);
        if (segs[k].axis == q) groups[project_out(segs[k].a, p, q)].second.push_back(k);
      }
      for (auto& [key, group] : groups) {
        auto& [along_p, along_q] = group;
        if (along_p.empty() || along_q.empty()) continue;
        std::sort(along_q.begin(), along_q.end(),
                  [&](std::size_t u, std::size_t v) { return segs[u].a[p] < segs[v].a[p]; });
        for (std::size_t u : along_p) {
          const Segment& h = segs[u];
          auto first = std::lower_bound(along_q.begin(), along_q.end(), h.a[p],
                                        [&](std::size_t v, const Rational& x) { return segs[v].a[p] < x; });
          for (auto it = first; it != along_q.end() && segs[*it].a[p] <= h.b[p]; ++it) {
            const Segment& v = segs[*it];
            if (h.a[q] < v.a[q] || v.b[q] < h.a[q]) continue;
            stops[u].push_back(v.a[p]);
            stops[*it].push_back(h.a[q]);
          }
        }
      }
    }
  }

  // Query points: look up the supporting line per axis.
  if (!query_points.empty() && !segs.empty()) {
    std::map<std::pair<int, Point>, std::vector<std::size_t>> lines;
    for (std::size_t k = 0; k < segs.size(); ++k) {
      Point key = segs[k].a;
      key[segs[k].axis] = Rational(0);
      lines[{segs[k].axis, std::move(key)}].push_back(k);  // canonical order: sorted by start
    }
    for (const auto& qp : query_points) {
      if (qp.dim() != dim) continue;
      for (int ax = 0; ax < dim; ++ax) {
        Point key = qp;
        key[ax] = Rational(0);
        auto found = lines.find({ax, key});
        if (found == lines.end()) continue;
        const auto& on_line = found->second;
        auto it = std::upper_bound(on_line.begin(), on_line.end(), qp[ax],
                                   [&](const Rational& x, std::size_t k) { return x < segs[k].a[ax]; });
        if (it == on_line.begin()) continue;
        --it;
        if (qp[ax] <= segs[*it].b[ax]) stops[*it].push_back(qp[ax]);
      }
    }
  }

  for (std::size_t k = 0; k < segs.size(); ++k) {
    auto& st = stops[k];
    std::sort(st.begin(), st.end());
    st.erase(std::unique(st.begin(), st.end()), st.end());
    const int axis = segs[k].axis;
    int prev = -1;
    for (const auto& pos : st) {
      Point pt = segs[k].a;
      pt[axis] = pos;
      const int id = intern(pt);
      if (prev >= 0) {
        Rational len = pos - vertices_[static_cast<std::size_t>(prev)][axis];
        adj_[static_cast<std::size_t>(prev)].push_back(Edge{id, axis, +1, len});
        adj_[static_cast<std::size_t>(id)].push_back(Edge{prev, axis, -1, std::move(len)});
      }
      prev = id;
    }
  }
}

int ArrangementGraph::intern(const Point& p) {
  auto [it, inserted] = index_.try_emplace(p, static_cast<int>(vertices_.size()));
  if (inserted) {
    vertices_.push_back(p);
    adj_.emplace_back();
  }
  return it->second;
}

std::size_t ArrangementGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& a : adj_) total += a.size();
  return total / 2;
}

std::optional<int> ArrangementGraph::find(const Point& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Rational ArrangementGraph::total_edge_length() const {
  Rational total;
  for (const auto& a : adj_) {
    for (const auto& e : a) {
      if (e.dir > 0) total += e.length;
    }
  }
  return total;
}

std::optional<std::vector<int>> ArrangementGraph::monotone_path(int from, int to) const {
  const Point& target = vertex(to);
  std::vector<int> parent(vertices_.size(), -1);
  std::deque<int> queue{from};
  parent[static_cast<std::size_t>(from)] = from;
  while (!queue.empty() && parent[static_cast<std::size_t>(to)] < 0) {
    const int v = queue.front();
    queue.pop_front();
    const Point& pv = vertex(v);
    // Neighbours are expanded in canonical segment order (axis-major).
    for (const auto& e : edges(v)) {
      if (parent[static_cast<std::size_t>(e.to)] >= 0) continue;
      const Rational& tv = target[e.axis];
      const Rational& cur = pv[e.axis];
      const Rational& next = vertex(e.to)[e.axis];
      const bool ok = e.dir > 0 ? (cur < tv && next <= tv) : (tv < cur && tv <= next);
      if (!ok) continue;
      parent[static_cast<std::size_t>(e.to)] = v;
      queue.push_back(e.to);
    }
  }
  if (parent[static_cast<std::size_t>(to)] < 0) return std::nullopt;

  std::vector<int> path{to};
  Rational walked;
  for (int v = to; v != from;) {
    const int u = parent[static_cast<std::size_t>(v)];
    walked += manhattan_distance(vertex(u), vertex(v));
    path.push_back(u);
    v = u;
  }
  std::reverse(path.begin(), path.end());
  if (walked != manhattan_distance(vertex(from), target)) {
    throw std::logic_error("monotone search produced a non-shortest path");
  }
  return path;
}

std::string to_string(Violation v) {
  return v == Violation::kTerminalOffNetwork ? "terminal-off-network" : "no-monotone-path";
}

bool has_m_path(const RectilinearNetwork& net, const Point& t, const Point& t2) {
  if (t == t2) return true;
  const Point query[] = {t, t2};
  ArrangementGraph graph(net, query);
  auto a = graph.find(t);
  auto b = graph.find(t2);
  if (!a || !b) return false;
  return graph.monotone_path(*a, *b).has_value();
}

FeasibilityReport verify_instance(const RectilinearNetwork& net, const Instance& inst) {
  FeasibilityReport report;
  report.pair_count = inst.pairs.size();
  if (inst.pairs.empty()) return report;
  const auto terminals = inst.terminals();
  ArrangementGraph graph(net, terminals);
  for (std::size_t k = 0; k < inst.pairs.size(); ++k) {
    const auto& pair = inst.pairs[k];
    if (pair.first == pair.second) continue;
    auto a = graph.find(pair.first);
    auto b = graph.find(pair.second);
    if (!a || !b) {
      report.violations.push_back({k, Violation::kTerminalOffNetwork});
    } else if (!graph.monotone_path(*a, *b)) {
      report.violations.push_back({k, Violation::kNoMonotonePath});
    }
  }
  return report;
}

}  // namespace gmmn
