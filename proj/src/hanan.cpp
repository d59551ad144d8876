#include "gmmn/hanan.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <queue>
#include <stdexcept>

namespace gmmn {

HananGrid HananGrid::of(std::span<const Point> points, bool include_origin) {
  HananGrid grid;
  if (points.empty()) return grid;
  const int dim = points.front().dim();
  grid.axes.resize(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    auto& ax = grid.axes[static_cast<std::size_t>(i)];
    for (const auto& p : points) ax.push_back(p[i]);
    if (include_origin) ax.emplace_back(0);
    std::sort(ax.begin(), ax.end());
    ax.erase(std::unique(ax.begin(), ax.end()), ax.end());
  }
  return grid;
}

std::size_t HananGrid::vertex_count() const {
  if (axes.empty()) return 0;
  std::size_t n = 1;
  for (const auto& ax : axes) n *= ax.size();
  return n;
}

std::size_t HananGrid::max_axis_size() const {
  std::size_t m = 0;
  for (const auto& ax : axes) m = std::max(m, ax.size());
  return m;
}

std::size_t HananGrid::stride(int axis) const {
  std::size_t s = 1;
  for (int j = dim() - 1; j > axis; --j) s *= axes[static_cast<std::size_t>(j)].size();
  return s;
}

std::size_t HananGrid::coord_index(std::size_t id, int axis) const {
  return (id / stride(axis)) % axes[static_cast<std::size_t>(axis)].size();
}

Point HananGrid::point(std::size_t id) const {
  Point p;
  p.coords.reserve(axes.size());
  for (int i = 0; i < dim(); ++i) p.coords.push_back(axes[static_cast<std::size_t>(i)][coord_index(id, i)]);
  return p;
}

std::size_t HananGrid::locate(const Point& p) const {
  if (p.dim() != dim()) throw std::out_of_range("point dimension does not match grid");
  std::size_t id = 0;
  for (int i = 0; i < dim(); ++i) {
    const auto& ax = axes[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(ax.begin(), ax.end(), p[i]);
    if (it == ax.end() || *it != p[i]) throw std::out_of_range("point not on Hanan grid: " + p.to_string());
    id += static_cast<std::size_t>(it - ax.begin()) * stride(i);
  }
  return id;
}

std::optional<std::size_t> HananGrid::step_up(std::size_t id, int axis) const {
  if (coord_index(id, axis) + 1 >= axes[static_cast<std::size_t>(axis)].size()) return std::nullopt;
  return id + stride(axis);
}

std::vector<std::tuple<std::size_t, std::size_t, int>> HananGrid::edges() const {
  std::vector<std::tuple<std::size_t, std::size_t, int>> out;
  const std::size_t n = vertex_count();
  for (std::size_t id = 0; id < n; ++id) {
    for (int i = 0; i < dim(); ++i) {
      if (auto up = step_up(id, i)) out.emplace_back(id, *up, i);
    }
  }
  return out;
}

std::optional<SteinerArborescence> min_steiner_arborescence(const WeightedDigraph& graph, std::size_t root,
                                                            std::span<const std::size_t> terminals) {
  const std::size_t n = graph.out.size();
  const std::size_t k = terminals.size();
  if (k == 0) return SteinerArborescence{};
  if (k > 20) throw std::length_error("too many terminals for Dreyfus-Wagner");

  enum class Via : unsigned char { kNone, kBase, kSplit, kArc };
  struct Cell {
    Rational cost;
    Via via = Via::kNone;
    std::size_t aux = 0;
  };
  const std::size_t full = (std::size_t{1} << k) - 1;
  std::vector<std::vector<Cell>> table(full + 1, std::vector<Cell>(n));

  std::vector<std::vector<std::pair<std::size_t, const Rational*>>> in(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (const auto& arc : graph.out[u]) in[arc.to].emplace_back(u, &arc.weight);
  }

  using Entry = std::pair<Rational, std::size_t>;
  for (std::size_t set = 1; set <= full; ++set) {
    auto& row = table[set];
    if ((set & (set - 1)) == 0) {
      const std::size_t i = static_cast<std::size_t>(std::countr_zero(set));
      row[terminals[i]] = Cell{Rational(0), Via::kBase, 0};
    } else {
      const std::size_t low = set & (~set + 1);
      for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t sub = (set - 1) & set; sub > 0; sub = (sub - 1) & set) {
          if ((sub & low) == 0) continue;
          const Cell& a = table[sub][v];
          const Cell& b = table[set ^ sub][v];
          if (a.via == Via::kNone || b.via == Via::kNone) continue;
          Rational c = a.cost + b.cost;
          if (row[v].via == Via::kNone || c < row[v].cost) row[v] = Cell{std::move(c), Via::kSplit, sub};
        }
      }
    }
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    for (std::size_t v = 0; v < n; ++v) {
      if (row[v].via != Via::kNone) queue.emplace(row[v].cost, v);
    }
    while (!queue.empty()) {
      auto [cost, v] = queue.top();
      queue.pop();
      if (cost != row[v].cost) continue;
      for (const auto& [u, w] : in[v]) {
        Rational c = cost + *w;
        if (row[u].via == Via::kNone || c < row[u].cost) {
          row[u] = Cell{c, Via::kArc, v};
          queue.emplace(std::move(c), u);
        }
      }
    }
  }

  if (table[full][root].via == Via::kNone) return std::nullopt;
  SteinerArborescence result;
  result.cost = table[full][root].cost;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{full, root}};
  while (!stack.empty()) {
    auto [set, v] = stack.back();
    stack.pop_back();
    const Cell& cell = table[set][v];
    switch (cell.via) {
      case Via::kBase:
      case Via::kNone:
        break;
      case Via::kSplit:
        stack.emplace_back(cell.aux, v);
        stack.emplace_back(set ^ cell.aux, v);
        break;
      case Via::kArc:
        result.arcs.emplace_back(v, cell.aux);
        stack.emplace_back(set, cell.aux);
        break;
    }
  }
  std::sort(result.arcs.begin(), result.arcs.end());
  result.arcs.erase(std::unique(result.arcs.begin(), result.arcs.end()), result.arcs.end());
  return result;
}

}  // namespace gmmn
