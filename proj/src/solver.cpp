#include "gmmn/solver.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <stdexcept>

namespace gmmn {

std::string to_string(Algorithm a) { return a == Algorithm::kRecursiveD ? "recursive-d" : "improved-2d"; }

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "recursive-d") return Algorithm::kRecursiveD;
  if (name == "improved-2d") return Algorithm::kImproved2D;
  return std::nullopt;
}

void SolverConfig::validate(int dim) const {
  if (algorithm == Algorithm::kImproved2D && dim != 2) {
    throw std::invalid_argument("improved-2d requires d = 2 (got d = " + std::to_string(dim) + ")");
  }
}

SplitResult median_split(const Instance& inst, int axis) {
  if (inst.empty()) throw std::invalid_argument("median_split: empty instance");
  if (axis < 0 || axis >= inst.dim) throw std::invalid_argument("median_split: axis out of range");
  if (inst.separators.size() != static_cast<std::size_t>(axis)) {
    throw std::invalid_argument("median_split: instance must be separated on exactly the previous axes");
  }
  std::vector<Rational> coords;
  coords.reserve(2 * inst.size());
  for (const auto& p : inst.pairs) {
    coords.push_back(p.first[axis]);
    coords.push_back(p.second[axis]);
  }
  const auto mid_index = static_cast<long>(inst.size()) - 1;
  std::nth_element(coords.begin(), coords.begin() + mid_index, coords.end());

  SplitResult split;
  split.axis = axis;
  split.median = coords[static_cast<std::size_t>(mid_index)];
  for (auto* part : {&split.left, &split.mid, &split.right}) {
    part->dim = inst.dim;
    part->separators = inst.separators;
  }
  split.mid.separators.push_back(split.median);
  for (const auto& p : inst.pairs) {
    const Rational& a = p.first[axis];
    const Rational& b = p.second[axis];
    if (a < split.median && b < split.median) {
      split.left.pairs.push_back(p);
    } else if (split.median < a && split.median < b) {
      split.right.pairs.push_back(p);
    } else {
      split.mid.pairs.push_back(p);
    }
  }
  return split;
}

RectilinearNetwork solve_d_separated(const Instance& inst, SteinerBackend backend) {
  if (inst.empty()) return {};
  if (inst.separators.size() != static_cast<std::size_t>(inst.dim)) {
    throw std::invalid_argument("solve_d_separated: instance needs one separator per axis");
  }
  const Point center(inst.separators);
  for (std::size_t k = 0; k < inst.pairs.size(); ++k) {
    if (!Box::of(inst.pairs[k]).contains(center)) {
      throw std::invalid_argument("solve_d_separated: pair " + std::to_string(k) + " misses the separator point");
    }
  }
  // Rooting the arborescence at the separator point is the same as translating it to
  // the origin and back.
  RsaInstance rsa{inst.terminals(), center};
  return rsa_shortcut(rsa, backend).network;
}

std::vector<AxisComponent> connected_components_on_axis(const Instance& inst) {
  if (inst.dim != 2) throw std::invalid_argument("connected_components_on_axis: d must be 2");
  const auto boxes = inst.boxes();
  for (const auto& b : boxes) {
    if (Rational(0) < b.lo[0] || b.hi[0] < Rational(0)) throw std::invalid_argument("box does not cross the y-axis");
  }
  std::vector<std::size_t> order(boxes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return boxes[a].lo[1] < boxes[b].lo[1]; });

  std::vector<AxisComponent> out;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t idx : order) {
    const Box& b = boxes[idx];
    if (out.empty() || out.back().span.hi < b.lo[1]) {
      AxisComponent comp;
      comp.pairs.dim = 2;
      comp.span = {b.lo[1], b.hi[1]};
      out.push_back(std::move(comp));
      members.emplace_back();
    } else {
      out.back().span.hi = max(out.back().span.hi, b.hi[1]);
    }
    members.back().push_back(idx);
  }
  for (std::size_t c = 0; c < out.size(); ++c) {
    std::sort(members[c].begin(), members[c].end());
    for (std::size_t idx : members[c]) out[c].pairs.pairs.push_back(inst.pairs[idx]);
  }
  return out;
}

std::vector<ImprovedComponentTrace> trace_x_separated_improved(const Instance& inst, const Rational& separator,
                                                               SteinerBackend backend) {
  if (inst.dim != 2) throw std::invalid_argument("improved x-separated algorithm needs d = 2");
  Instance shifted = AffineMap::translation(Point{-separator, Rational(0)})(inst);
  shifted.separators.clear();
  for (std::size_t k = 0; k < shifted.pairs.size(); ++k) {
    const auto& p = shifted.pairs[k];
    if (Rational(0) < min(p.first[0], p.second[0]) || max(p.first[0], p.second[0]) < Rational(0)) {
      throw std::invalid_argument("pair " + std::to_string(k) + " does not straddle the separator");
    }
  }

  std::vector<ImprovedComponentTrace> traces;
  for (auto& comp : connected_components_on_axis(shifted)) {
    ImprovedComponentTrace tr;
    tr.top = Point{Rational(0), comp.span.hi};
    tr.bottom = Point{Rational(0), comp.span.lo};
    for (const auto& p : comp.pairs.pairs) {
      // Ties in y: first terminal low, partner high.
      const bool first_low = p.first[1] <= p.second[1];
      tr.low_terminals.push_back(first_low ? p.first : p.second);
      tr.high_terminals.push_back(first_low ? p.second : p.first);
    }
    for (auto* set : {&tr.low_terminals, &tr.high_terminals}) {
      std::sort(set->begin(), set->end());
      set->erase(std::unique(set->begin(), set->end()), set->end());
    }
    const auto boxes = comp.pairs.boxes();
    tr.stabbing = stab_both(boxes);
    tr.up = rsa_shortcut(RsaInstance{tr.low_terminals, tr.top}, backend);
    tr.down = rsa_shortcut(RsaInstance{tr.high_terminals, tr.bottom}, backend);
    RectilinearNetwork net = tr.up.network;
    net.add(tr.down.network);
    net.add(to_network(tr.stabbing));
    tr.network = net.canonical();
    tr.component = std::move(comp);
    traces.push_back(std::move(tr));
  }
  return traces;
}

RectilinearNetwork solve_x_separated_improved(const Instance& inst, const Rational& separator,
                                              SteinerBackend backend) {
  if (inst.empty()) return {};
  RectilinearNetwork shifted;
  for (const auto& tr : trace_x_separated_improved(inst, separator, backend)) shifted.add(tr.network);
  return AffineMap::translation(Point{separator, Rational(0)})(shifted).canonical();
}

namespace {

constexpr std::size_t kParallelCutoff = 512;
constexpr int kParallelDepth = 3;

std::vector<Segment> solve_level(const Instance& inst, int axis, const SolverConfig& cfg, int depth) {
  if (inst.empty()) return {};
  if (axis == inst.dim) return solve_d_separated(inst, cfg.backend).segments();

  SplitResult split = median_split(inst, axis);

  std::vector<Segment> out;
  auto append = [&out](std::vector<Segment> segs) {
    out.insert(out.end(), std::make_move_iterator(segs.begin()), std::make_move_iterator(segs.end()));
  };

  std::future<std::vector<Segment>> left_async;
  const bool fork = cfg.parallel && depth < kParallelDepth && split.left.size() >= kParallelCutoff;
  if (fork) {
    left_async = std::async(std::launch::async, solve_level, std::cref(split.left), axis, std::cref(cfg), depth + 1);
  } else {
    append(solve_level(split.left, axis, cfg, depth + 1));
  }

  if (!split.mid.empty()) {
    if (cfg.algorithm == Algorithm::kImproved2D && inst.dim == 2 && axis == 0) {
      append(solve_x_separated_improved(split.mid, split.median, cfg.backend).segments());
    } else {
      append(solve_level(split.mid, axis + 1, cfg, depth));
    }
  }
  append(solve_level(split.right, axis, cfg, depth + 1));
  if (fork) append(left_async.get());
  return out;
}

}  // namespace

RectilinearNetwork solve_gmmn(const Instance& inst, const SolverConfig& cfg) {
  cfg.validate(inst.dim);
  inst.validate();
  Instance work;
  work.dim = inst.dim;
  work.separators = inst.separators;
  for (const auto& p : inst.pairs) {
    if (p.first != p.second) work.pairs.push_back(p);
  }
  const int start_axis = static_cast<int>(work.separators.size());
  if (cfg.algorithm == Algorithm::kImproved2D && start_axis > 0) {
    if (start_axis == 1) return solve_x_separated_improved(work, work.separators[0], cfg.backend);
  }
  return RectilinearNetwork(solve_level(work, start_axis, cfg, 0)).canonical();
}

}  // namespace gmmn
