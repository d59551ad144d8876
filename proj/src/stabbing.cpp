#include "gmmn/stabbing.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace gmmn {

bool pierces(const Piercing& points, std::span<const Interval> intervals) {
  return std::all_of(intervals.begin(), intervals.end(), [&](const Interval& iv) {
    auto it = std::lower_bound(points.begin(), points.end(), iv.lo);
    return it != points.end() && *it <= iv.hi;
  });
}

Piercing minimal_piercing(std::span<const Interval> intervals) {
  std::vector<const Interval*> order;
  order.reserve(intervals.size());
  for (const auto& iv : intervals) order.push_back(&iv);
  std::sort(order.begin(), order.end(), [](const Interval* a, const Interval* b) { return a->hi < b->hi; });
  Piercing out;
  for (const Interval* iv : order) {
    if (!out.empty() && iv->lo <= out.back()) continue;
    out.push_back(iv->hi);
  }
  return out;
}

Piercing prune_piercing(const Piercing& points, std::span<const Interval> intervals) {
  if (!pierces(points, intervals)) throw std::invalid_argument("prune_piercing: input does not pierce");
  const std::size_t n = points.size();
  // Live points as a doubly linked list over indices; n marks "none".
  std::vector<std::size_t> prev(n), next(n);
  for (std::size_t i = 0; i < n; ++i) {
    prev[i] = i == 0 ? n : i - 1;
    next[i] = i + 1;
  }
  std::vector<bool> live(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& p = points[i];
    bool removable = true;
    for (const auto& iv : intervals) {
      if (!iv.contains(p)) continue;
      const bool below = prev[i] != n && iv.lo <= points[prev[i]];
      const bool above = next[i] != n && points[next[i]] <= iv.hi;
      if (!below && !above) {
        removable = false;
        break;
      }
    }
    if (!removable) continue;
    live[i] = false;
    if (prev[i] != n) next[prev[i]] = next[i];
    if (next[i] != n) prev[next[i]] = prev[i];
  }
  Piercing out;
  for (std::size_t i = 0; i < n; ++i) {
    if (live[i]) out.push_back(points[i]);
  }
  return out;
}

std::vector<long> witness_intervals(const Piercing& points, std::span<const Interval> intervals) {
  std::vector<long> witness(points.size(), -1);
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    const auto& iv = intervals[k];
    auto first = std::lower_bound(points.begin(), points.end(), iv.lo);
    auto last = std::upper_bound(points.begin(), points.end(), iv.hi);
    if (last - first != 1) continue;
    auto& w = witness[static_cast<std::size_t>(first - points.begin())];
    if (w < 0) w = static_cast<long>(k);
  }
  return witness;
}

bool stabs(const StabSegment& s, const Box& box) {
  return s.x_lo <= box.lo[0] && box.hi[0] <= s.x_hi && box.lo[1] <= s.y && s.y <= box.hi[1];
}

bool stabs_right_part(const StabSegment& s, const Box& box) {
  const Rational left = max(box.lo[0], Rational(0));
  return s.x_lo <= left && box.hi[0] <= s.x_hi && box.lo[1] <= s.y && s.y <= box.hi[1];
}

bool stabs_all(const Stabbing& stabbing, std::span<const Box> boxes) {
  return std::all_of(boxes.begin(), boxes.end(), [&](const Box& b) {
    return std::any_of(stabbing.begin(), stabbing.end(), [&](const StabSegment& s) { return stabs(s, b); });
  });
}

RectilinearNetwork to_network(const Stabbing& stabbing) {
  std::vector<Segment> segs;
  segs.reserve(stabbing.size());
  for (const auto& s : stabbing) segs.push_back(Segment::between(Point{s.x_lo, s.y}, Point{s.x_hi, s.y}));
  return RectilinearNetwork(std::move(segs));
}

Rational stabbing_cost(const Stabbing& stabbing) { return to_network(stabbing).length(); }

Stabbing sweep_stab_halfplane(std::span<const Box> boxes, const SweepObserver& observer) {
  struct Item {
    Rational right;
    Interval span;
  };
  std::vector<Item> items;
  items.reserve(boxes.size());
  for (const auto& b : boxes) {
    if (b.dim() != 2) throw std::invalid_argument("stabbing needs 2D boxes");
    if (Rational(0) < b.lo[0] || b.hi[0] < Rational(0)) {
      throw std::invalid_argument("box does not cross the y-axis");
    }
    items.push_back({b.hi[0], {b.lo[1], b.hi[1]}});
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.right < b.right; });
  std::vector<Interval> cross;
  cross.reserve(items.size());
  for (const auto& it : items) cross.push_back(it.span);

  Piercing piercing = minimal_piercing(cross);
  Stabbing traces;
  std::size_t first_alive = 0;
  while (first_alive < items.size()) {
    const Rational event = items[first_alive].right;
    while (first_alive < items.size() && items[first_alive].right == event) ++first_alive;
    const std::span<const Interval> remaining(cross.data() + first_alive, cross.size() - first_alive);
    Piercing kept = prune_piercing(piercing, remaining);
    // Both lists are sorted; the difference dies here.
    std::size_t j = 0;
    for (const auto& y : piercing) {
      if (j < kept.size() && kept[j] == y) {
        ++j;
      } else {
        traces.push_back({y, Rational(0), event});
      }
    }
    piercing = std::move(kept);
    if (observer) observer(SweepSnapshot{event, remaining, piercing});
  }
  return traces;
}

Stabbing stab_both(std::span<const Box> boxes) {
  std::vector<Box> reflected;
  reflected.reserve(boxes.size());
  for (const auto& b : boxes) {
    if (b.dim() != 2) throw std::invalid_argument("stabbing needs 2D boxes");
    Box r = b;
    r.lo[0] = -b.hi[0];
    r.hi[0] = -b.lo[0];
    reflected.push_back(std::move(r));
  }
  Stabbing out;
  for (const auto& half : {sweep_stab_halfplane(boxes), sweep_stab_halfplane(reflected)}) {
    for (const auto& t : half) {
      StabSegment mirrored{t.y, -t.x_hi, t.x_hi};
      if (std::find(out.begin(), out.end(), mirrored) == out.end()) out.push_back(std::move(mirrored));
    }
  }
  return out;
}

Stabbing exact_min_stabbing(std::span<const Box> boxes) {
  const std::size_t n = boxes.size();
  if (n > kExactStabbingMaxBoxes) throw std::length_error("exact_min_stabbing: too many boxes");
  if (n == 0) return {};
  for (const auto& b : boxes) {
    if (b.dim() != 2) throw std::invalid_argument("stabbing needs 2D boxes");
  }

  std::vector<std::size_t> block(n, 0);  // restricted growth string
  std::optional<Rational> best_cost;
  Stabbing best;
  while (true) {
    const std::size_t blocks = *std::max_element(block.begin(), block.end()) + 1;
    Stabbing candidate;
    Rational cost;
    bool ok = true;
    for (std::size_t g = 0; g < blocks && ok; ++g) {
      std::optional<StabSegment> seg;
      Rational y_hi;
      for (std::size_t i = 0; i < n; ++i) {
        if (block[i] != g) continue;
        const Box& b = boxes[i];
        if (!seg) {
          seg = StabSegment{b.lo[1], b.lo[0], b.hi[0]};
          y_hi = b.hi[1];
          continue;
        }
        seg->y = max(seg->y, b.lo[1]);
        y_hi = min(y_hi, b.hi[1]);
        seg->x_lo = min(seg->x_lo, b.lo[0]);
        seg->x_hi = max(seg->x_hi, b.hi[0]);
      }
      if (y_hi < seg->y) {
        ok = false;
        break;
      }
      cost += seg->x_hi - seg->x_lo;
      candidate.push_back(*seg);
    }
    if (ok && (!best_cost || cost < *best_cost)) {
      best_cost = cost;
      best = std::move(candidate);
    }
    // Next restricted growth string.
    std::size_t i = n - 1;
    while (i > 0) {
      const std::size_t limit = *std::max_element(block.begin(), block.begin() + static_cast<long>(i)) + 1;
      if (block[i] < limit) {
        ++block[i];
        std::fill(block.begin() + static_cast<long>(i) + 1, block.end(), 0);
        break;
      }
      --i;
    }
    if (i == 0) break;
  }
  return best;
}

}  // namespace gmmn
