#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gmmn/geometry.hpp"

namespace gmmn {

/// Closed interval [lo, hi], lo <= hi.
struct Interval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& y) const { return lo <= y && y <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted, duplicate-free set of piercing coordinates.
using Piercing = std::vector<Rational>;

bool pierces(const Piercing& points, std::span<const Interval> intervals);

/// Minimum-cardinality piercing: repeatedly pierce the smallest unpierced upper endpoint.
Piercing minimal_piercing(std::span<const Interval> intervals);

/// Drops points bottom-to-top while the rest still pierces. Result is inclusion-wise
/// minimal. Throws std::invalid_argument if `points` does not pierce `intervals`.
Piercing prune_piercing(const Piercing& points, std::span<const Interval> intervals);

/// For each point, an index into `intervals` of an interval it alone pierces,
/// or -1 where none exists.
std::vector<long> witness_intervals(const Piercing& points, std::span<const Interval> intervals);

/// Horizontal segment at height `y` spanning [x_lo, x_hi].
struct StabSegment {
  Rational y;
  Rational x_lo;
  Rational x_hi;

  friend bool operator==(const StabSegment&, const StabSegment&) = default;
};

using Stabbing = std::vector<StabSegment>;

/// The segment crosses the box's full x-extent at a height inside its y-extent.
bool stabs(const StabSegment& s, const Box& box);
bool stabs_all(const Stabbing& stabbing, std::span<const Box> boxes);
/// Right part [max(lo.x,0), hi.x] x [lo.y, hi.y] is crossed fully.
bool stabs_right_part(const StabSegment& s, const Box& box);

RectilinearNetwork to_network(const Stabbing& stabbing);
/// Length of the union of the segments.
Rational stabbing_cost(const Stabbing& stabbing);

/// State of the sweep right after the piercing was pruned at event `x`.
struct SweepSnapshot {
  const Rational& x;
  std::span<const Interval> intervals;  // cross-section strictly right of x
  const Piercing& piercing;
};
using SweepObserver = std::function<void(const SweepSnapshot&)>;

/// Left-to-right sweep over the right parts of 2D boxes crossing the y-axis.
/// Every returned segment is a piercing trace [0, x_death] at a fixed height.
/// Throws std::invalid_argument for a box not crossing x = 0.
Stabbing sweep_stab_halfplane(std::span<const Box> boxes, const SweepObserver& observer = {});

/// Sweeps both halves (the left one reflected) and mirrors each trace across the y-axis.
Stabbing stab_both(std::span<const Box> boxes);

inline constexpr std::size_t kExactStabbingMaxBoxes = 6;

/// Cheapest stabbing by exhaustive partition of the boxes into co-stabbed groups.
Stabbing exact_min_stabbing(std::span<const Box> boxes);

}  // namespace gmmn
