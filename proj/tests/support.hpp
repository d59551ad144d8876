#pragma once

// Test helpers and brute-force oracles that share no code with the library's
// verifier or exact searches.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "gmmn/geometry.hpp"
#include "gmmn/toolkit.hpp"

namespace gmmn::testing {

inline Point P(long long x, long long y) { return Point{Rational(x), Rational(y)}; }
inline Point P(long long x, long long y, long long z) { return Point{Rational(x), Rational(y), Rational(z)}; }
inline Rational Q(long long n, long long d = 1) { return Rational(n, d); }

inline RectilinearNetwork polyline(std::initializer_list<Point> pts) {
  std::vector<Segment> segs;
  const std::vector<Point> v(pts);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) segs.push_back(Segment::between(v[i], v[i + 1]));
  return RectilinearNetwork(std::move(segs));
}

/// Monotone reachability on the grid of every coordinate that appears in the
/// network or the pair. A grid step is usable when a single segment contains
/// both of its ends.
inline bool brute_has_m_path(const RectilinearNetwork& net, const Point& t, const Point& u) {
  const int d = t.dim();
  if (t == u) return true;
  auto on_net = [&](const Point& p) {
    return std::any_of(net.segments().begin(), net.segments().end(), [&](const Segment& s) { return s.contains(p); });
  };
  if (!on_net(t) || !on_net(u)) return false;
  std::vector<std::vector<Rational>> axes(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    auto& ax = axes[static_cast<std::size_t>(i)];
    const Rational lo = min(t[i], u[i]), hi = max(t[i], u[i]);
    for (const auto& s : net.segments()) {
      for (const Rational& c : {s.a[i], s.b[i]}) {
        if (lo <= c && c <= hi) ax.push_back(c);
      }
    }
    ax.push_back(lo);
    ax.push_back(hi);
    std::sort(ax.begin(), ax.end());
    ax.erase(std::unique(ax.begin(), ax.end()), ax.end());
    if (u[i] < t[i]) std::reverse(ax.begin(), ax.end());  // walk direction
  }
  // State: index per axis into the (direction-ordered) coordinate list.
  std::set<std::vector<std::size_t>> seen;
  std::queue<std::vector<std::size_t>> todo;
  auto point_of = [&](const std::vector<std::size_t>& idx) {
    Point p = Point::zero(d);
    for (int i = 0; i < d; ++i) p[i] = axes[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
    return p;
  };
  todo.push(std::vector<std::size_t>(static_cast<std::size_t>(d), 0));
  while (!todo.empty()) {
    auto cur = todo.front();
    todo.pop();
    const Point p = point_of(cur);
    if (p == u) return true;
    for (int i = 0; i < d; ++i) {
      auto next = cur;
      if (++next[static_cast<std::size_t>(i)] >= axes[static_cast<std::size_t>(i)].size()) continue;
      if (seen.contains(next)) continue;
      const Point q = point_of(next);
      const bool covered = std::any_of(net.segments().begin(), net.segments().end(),
                                       [&](const Segment& s) { return s.contains(p) && s.contains(q); });
      if (!covered) continue;
      seen.insert(next);
      todo.push(next);
    }
  }
  return false;
}

/// Minimum length of a union of one monotone Hanan-grid path per pair (2D),
/// by plain enumeration of all path combinations.
inline Rational brute_min_union(const std::vector<TerminalPair>& pairs) {
  std::set<Rational> xs, ys;
  for (const auto& p : pairs) {
    for (const Point* q : {&p.first, &p.second}) {
      xs.insert((*q)[0]);
      ys.insert((*q)[1]);
    }
  }
  const std::vector<Rational> X(xs.begin(), xs.end()), Y(ys.begin(), ys.end());
  using Edge = std::pair<std::pair<std::size_t, std::size_t>, int>;  // lower grid vertex + axis
  auto idx = [](const std::vector<Rational>& v, const Rational& c) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), c) - v.begin());
  };
  std::vector<std::vector<std::set<Edge>>> options;
  for (const auto& p : pairs) {
    std::vector<std::set<Edge>> paths;
    const std::size_t x0 = idx(X, p.first[0]), y0 = idx(Y, p.first[1]);
    const std::size_t x1 = idx(X, p.second[0]), y1 = idx(Y, p.second[1]);
    const std::size_t nx = x0 > x1 ? x0 - x1 : x1 - x0, ny = y0 > y1 ? y0 - y1 : y1 - y0;
    std::vector<int> moves(nx, 0);
    moves.insert(moves.end(), ny, 1);
    do {
      std::set<Edge> path;
      std::size_t x = x0, y = y0;
      for (int m : moves) {
        if (m == 0) {
          const std::size_t nxt = x < x1 ? x + 1 : x - 1;
          path.insert({{std::min(x, nxt), y}, 0});
          x = nxt;
        } else {
          const std::size_t nyt = y < y1 ? y + 1 : y - 1;
          path.insert({{x, std::min(y, nyt)}, 1});
          y = nyt;
        }
      }
      paths.push_back(std::move(path));
    } while (std::next_permutation(moves.begin(), moves.end()));
    options.push_back(std::move(paths));
  }
  auto length = [&](const std::set<Edge>& edges) {
    Rational sum;
    for (const auto& [v, axis] : edges) {
      sum += axis == 0 ? X[v.first + 1] - X[v.first] : Y[v.second + 1] - Y[v.second];
    }
    return sum;
  };
  std::optional<Rational> best;
  std::function<void(std::size_t, std::set<Edge>)> rec = [&](std::size_t k, std::set<Edge> acc) {
    if (k == options.size()) {
      const Rational l = length(acc);
      if (!best || l < *best) best = l;
      return;
    }
    for (const auto& path : options[k]) {
      auto next = acc;
      next.insert(path.begin(), path.end());
      rec(k + 1, std::move(next));
    }
  };
  rec(0, {});
  return best.value_or(Rational(0));
}

/// Random instance with small integer coordinates, for property tests.
inline Instance small_random_instance(PortableRng& rng, int d, std::size_t n, std::int64_t lo, std::int64_t hi) {
  Instance inst;
  inst.dim = d;
  while (inst.size() < n) {
    Point a = Point::zero(d), b = Point::zero(d);
    for (int i = 0; i < d; ++i) {
      a[i] = Rational(static_cast<long long>(rng.uniform(lo, hi)));
      b[i] = Rational(static_cast<long long>(rng.uniform(lo, hi)));
    }
    if (a != b) inst.pairs.push_back({a, b});
  }
  return inst;
}

inline std::vector<Point> random_points(PortableRng& rng, int d, std::size_t n, std::int64_t lo, std::int64_t hi) {
  std::vector<Point> out;
  for (std::size_t k = 0; k < n; ++k) {
    Point p = Point::zero(d);
    for (int i = 0; i < d; ++i) p[i] = Rational(static_cast<long long>(rng.uniform(lo, hi)));
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace gmmn::testing
