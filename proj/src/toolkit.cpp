#include "gmmn/toolkit.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "gmmn/hanan.hpp"
#include "gmmn/rsa.hpp"
#include "gmmn/verifier.hpp"

namespace gmmn {

namespace {

// Exact lengths of a small 2D grid scaled to a common integer denominator.
struct ScaledGrid {
  std::vector<Rational> xs, ys;
  mpz_class denominator = 1;
  std::vector<std::int64_t> weight;  // per edge index
  std::vector<Segment> segment;      // per edge index
  std::size_t horizontal_count = 0;

  std::size_t nx() const { return xs.size(); }
  std::size_t ny() const { return ys.size(); }
  std::size_t h_edge(std::size_t i, std::size_t j) const { return j * (nx() - 1) + i; }
  std::size_t v_edge(std::size_t i, std::size_t j) const { return horizontal_count + i * (ny() - 1) + j; }
};

ScaledGrid scale_grid(const HananGrid& grid) {
  ScaledGrid g;
  g.xs = grid.axes[0];
  g.ys = grid.axes[1];
  for (const auto* axis : {&g.xs, &g.ys}) {
    for (const auto& c : *axis) {
      mpz_class den = c.to_mpq().get_den();
      mpz_lcm(g.denominator.get_mpz_t(), g.denominator.get_mpz_t(), den.get_mpz_t());
    }
  }
  auto scaled = [&](const Rational& a, const Rational& b) {
    mpq_class diff = (b - a).to_mpq() * mpq_class(g.denominator);
    mpz_class w = diff.get_num();
    if (!w.fits_slong_p() || w > mpz_class(std::numeric_limits<std::int64_t>::max() / 64)) {
      throw std::length_error("exact_gmmn: coordinates too large");
    }
    return static_cast<std::int64_t>(w.get_si());
  };
  g.horizontal_count = (g.nx() - 1) * g.ny();
  const std::size_t total = g.horizontal_count + g.nx() * (g.ny() - 1);
  g.weight.resize(total);
  g.segment.resize(total);
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 0; i + 1 < g.nx(); ++i) {
      g.weight[g.h_edge(i, j)] = scaled(g.xs[i], g.xs[i + 1]);
      g.segment[g.h_edge(i, j)] = Segment::between(Point{g.xs[i], g.ys[j]}, Point{g.xs[i + 1], g.ys[j]});
    }
  }
  for (std::size_t i = 0; i < g.nx(); ++i) {
    for (std::size_t j = 0; j + 1 < g.ny(); ++j) {
      g.weight[g.v_edge(i, j)] = scaled(g.ys[j], g.ys[j + 1]);
      g.segment[g.v_edge(i, j)] = Segment::between(Point{g.xs[i], g.ys[j]}, Point{g.xs[i], g.ys[j + 1]});
    }
  }
  return g;
}

std::size_t index_of(const std::vector<Rational>& axis, const Rational& v) {
  return static_cast<std::size_t>(std::lower_bound(axis.begin(), axis.end(), v) - axis.begin());
}

// Every monotone grid path between two vertices as an edge bitmask.
std::vector<std::uint64_t> monotone_paths(const ScaledGrid& g, std::size_t i0, std::size_t j0, std::size_t i1,
                                          std::size_t j1) {
  std::vector<std::uint64_t> out;
  std::function<void(std::size_t, std::size_t, std::uint64_t)> walk = [&](std::size_t i, std::size_t j,
                                                                          std::uint64_t mask) {
    if (i == i1 && j == j1) {
      out.push_back(mask);
      return;
    }
    if (i != i1) {
      const std::size_t ni = i < i1 ? i + 1 : i - 1;
      walk(ni, j, mask | (std::uint64_t{1} << g.h_edge(std::min(i, ni), j)));
    }
    if (j != j1) {
      const std::size_t nj = j < j1 ? j + 1 : j - 1;
      walk(i, nj, mask | (std::uint64_t{1} << g.v_edge(i, std::min(j, nj))));
    }
  };
  walk(i0, j0, 0);
  return out;
}

std::int64_t mask_weight(const ScaledGrid& g, std::uint64_t mask) {
  std::int64_t w = 0;
  while (mask != 0) {
    w += g.weight[static_cast<std::size_t>(std::countr_zero(mask))];
    mask &= mask - 1;
  }
  return w;
}

}  // namespace

GmmnOptimum exact_gmmn(const Instance& inst) {
  if (inst.dim != 2) throw std::invalid_argument("exact_gmmn: d must be 2");
  Instance work = inst;
  work.separators.clear();
  work.validate();
  work.normalize();
  GmmnOptimum opt;
  if (work.empty()) return opt;
  if (work.size() > kExactGmmnMaxPairs) throw std::length_error("exact_gmmn: too many pairs");
  const auto terminals = work.terminals();
  const HananGrid grid = HananGrid::of(terminals);
  if (grid.max_axis_size() > kExactGmmnMaxGridPerAxis) throw std::length_error("exact_gmmn: Hanan grid too large");
  const ScaledGrid g = scale_grid(grid);

  std::vector<std::vector<std::uint64_t>> paths;
  std::int64_t lower_bound = 0;
  for (const auto& p : work.pairs) {
    paths.push_back(monotone_paths(g, index_of(g.xs, p.first[0]), index_of(g.ys, p.first[1]),
                                   index_of(g.xs, p.second[0]), index_of(g.ys, p.second[1])));
    lower_bound = std::max(lower_bound, mask_weight(g, paths.back().front()));
  }
  // Fewest alternatives first keeps the search tree narrow near the root.
  std::stable_sort(paths.begin(), paths.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });

  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::uint64_t best_mask = 0;
  std::function<void(std::size_t, std::uint64_t, std::int64_t)> search = [&](std::size_t k, std::uint64_t mask,
                                                                              std::int64_t cost) {
    if (best == lower_bound || std::max(cost, lower_bound) >= best) return;
    if (k == paths.size()) {
      best = cost;
      best_mask = mask;
      return;
    }
    for (std::uint64_t path : paths[k]) search(k + 1, mask | path, cost + mask_weight(g, path & ~mask));
  };
  search(0, 0, 0);

  std::vector<Segment> segs;
  std::int64_t horizontal = 0;
  for (std::uint64_t m = best_mask; m != 0; m &= m - 1) {
    const auto e = static_cast<std::size_t>(std::countr_zero(m));
    segs.push_back(g.segment[e]);
    if (e < g.horizontal_count) horizontal += g.weight[e];
  }
  const Rational den(mpq_class(g.denominator));
  opt.network = RectilinearNetwork(std::move(segs)).canonical();
  opt.cost = Rational(static_cast<long long>(best)) / den;
  opt.horizontal = Rational(static_cast<long long>(horizontal)) / den;
  opt.vertical = opt.cost - opt.horizontal;
  return opt;
}

namespace {

// Rectangles of A(m) as (lo, hi); the bounding square is [-1,0]^2 for m = 1 and
// [-1, 2 eps]^2 otherwise.
std::vector<std::pair<Point, Point>> tight_boxes(std::size_t m, const Rational& eps) {
  std::vector<std::pair<Point, Point>> out{{Point{-1, -1}, Point{0, 0}}};
  if (m == 1) return out;
  const auto sub = tight_boxes((m - 1) / 2, eps);
  const Rational side = (m - 1) / 2 == 1 ? Rational(1) : Rational(1) + Rational(2) * eps;
  auto place = [&](const Rational& factor, const Rational& offset) {
    const Rational f = factor / side;
    auto map = [&](const Point& p) { return Point{(p[0] + 1) * f + offset, (p[1] + 1) * f + offset}; };
    for (const auto& [lo, hi] : sub) out.emplace_back(map(lo), map(hi));
  };
  place(Rational(1) - eps, Rational(-1) + eps / 2);
  place(eps, eps);
  return out;
}

}  // namespace

TightFamily gen_tight(int k, const Rational& epsilon) {
  if (k < 0 || k > 20) throw std::invalid_argument("gen_tight: k must lie in [0, 20]");
  if (epsilon <= Rational(0) || Rational(1, 4) <= epsilon) throw std::invalid_argument("gen_tight: need 0 < eps < 1/4");
  TightFamily fam;
  fam.k = k;
  fam.epsilon = epsilon;
  fam.instance.dim = 2;
  if (k == 0) return fam;

  const std::size_t n = (std::size_t{1} << k) - 1;
  std::vector<Point> corners;
  for (auto& [lo, hi] : tight_boxes(n, epsilon)) {
    corners.push_back(lo);
    corners.push_back(hi);
    fam.instance.pairs.push_back({std::move(lo), std::move(hi)});
  }
  std::sort(corners.begin(), corners.end());
  corners.erase(std::unique(corners.begin(), corners.end()), corners.end());
  std::vector<Segment> segs;
  for (std::size_t i = 0; i + 1 < corners.size(); ++i) {
    if (corners[i + 1][1] < corners[i][1]) throw std::logic_error("gen_tight: corners do not form a chain");
    append_staircase(corners[i], corners[i + 1], segs);
  }
  fam.certificate = RectilinearNetwork(std::move(segs)).canonical();
  if (!verify_instance(fam.certificate, fam.instance).feasible()) {
    throw std::logic_error("gen_tight: certificate is infeasible");
  }
  return fam;
}

std::int64_t PortableRng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("PortableRng: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  // Values below the threshold would bias the modulo; 2^64 - threshold is a multiple of span.
  const std::uint64_t threshold = (0 - span) % span;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x < threshold);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % span);
}

namespace {

void check_random_params(std::size_t n, int d, std::int64_t lo, std::int64_t hi) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  if (d < 2) throw std::invalid_argument("need d >= 2");
  if (hi < lo) throw std::invalid_argument("coordinate range is empty");
  if (hi == lo) throw std::invalid_argument("empty instance: every terminal coincides");
}

Point random_point(PortableRng& rng, int d, std::int64_t lo, std::int64_t hi) {
  Point p = Point::zero(d);
  for (int i = 0; i < d; ++i) p[i] = Rational(static_cast<long long>(rng.uniform(lo, hi)));
  return p;
}

std::string range_text(std::int64_t lo, std::int64_t hi) {
  return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

}  // namespace

GeneratedInstance gen_random(std::size_t n, int d, std::int64_t lo, std::int64_t hi, std::uint64_t seed) {
  check_random_params(n, d, lo, hi);
  PortableRng rng(seed);
  GeneratedInstance gen;
  gen.seed = seed;
  gen.instance.dim = d;
  gen.provenance = "random n=" + std::to_string(n) + " d=" + std::to_string(d) + " range=" + range_text(lo, hi);
  while (gen.instance.size() < n) {
    Point a = random_point(rng, d, lo, hi);
    Point b = random_point(rng, d, lo, hi);
    if (a == b) continue;
    gen.instance.pairs.push_back({std::move(a), std::move(b)});
  }
  return gen;
}

GeneratedInstance gen_random_mmn(std::size_t points, int d, std::int64_t lo, std::int64_t hi, std::uint64_t seed) {
  check_random_params(points, d, lo, hi);
  if (points < 2) throw std::invalid_argument("mmn needs at least 2 points");
  // Cap the draw at the number of lattice points available.
  long double cells = 1;
  for (int i = 0; i < d; ++i) cells *= static_cast<long double>(hi - lo) + 1;
  if (cells < static_cast<long double>(points)) throw std::invalid_argument("range has fewer lattice points than requested");
  PortableRng rng(seed);
  std::vector<Point> pts;
  std::unordered_set<Point, PointHash> seen;
  while (pts.size() < points) {
    Point p = random_point(rng, d, lo, hi);
    if (seen.insert(p).second) pts.push_back(std::move(p));
  }
  GeneratedInstance gen;
  gen.seed = seed;
  gen.instance = mmn_from_points(pts);
  gen.provenance = "mmn points=" + std::to_string(points) + " d=" + std::to_string(d) + " range=" + range_text(lo, hi);
  return gen;
}

Instance mmn_from_points(std::span<const Point> points) {
  std::vector<Point> distinct;
  std::unordered_set<Point, PointHash> seen;
  for (const auto& p : points) {
    if (!distinct.empty() && p.dim() != distinct.front().dim()) throw std::invalid_argument("mmn: dimension mismatch");
    if (seen.insert(p).second) distinct.push_back(p);
  }
  if (distinct.size() < 2) throw std::invalid_argument("mmn needs at least 2 distinct points");
  Instance inst;
  inst.dim = distinct.front().dim();
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    for (std::size_t j = i + 1; j < distinct.size(); ++j) inst.pairs.push_back({distinct[i], distinct[j]});
  }
  return inst;
}

Rational max_pair_distance(const Instance& inst) {
  Rational best;
  for (const auto& p : inst.pairs) best = max(best, manhattan_distance(p.first, p.second));
  return best;
}

std::string to_string(ReferenceKind r) {
  switch (r) {
    case ReferenceKind::kOracle: return "oracle";
    case ReferenceKind::kCertificate: return "certificate";
    case ReferenceKind::kLowerBound: return "lower-bound";
  }
  return "?";
}

std::optional<ReferenceKind> parse_reference(std::string_view name) {
  if (name == "oracle") return ReferenceKind::kOracle;
  if (name == "certificate") return ReferenceKind::kCertificate;
  if (name == "lower-bound") return ReferenceKind::kLowerBound;
  return std::nullopt;
}

RatioReport ratio_report(const Instance& inst, std::span<const SolverConfig> algorithms, const Reference& reference) {
  Instance work = inst;
  work.normalize();
  if (work.empty()) throw std::invalid_argument("ratio_report: empty instance");

  RatioReport report;
  report.reference_kind = reference.kind;
  Rational ref;
  switch (reference.kind) {
    case ReferenceKind::kOracle:
      ref = exact_gmmn(work).cost;
      break;
    case ReferenceKind::kCertificate:
      if (!reference.certificate) throw std::invalid_argument("ratio_report: certificate reference without a certificate");
      if (!verify_instance(*reference.certificate, work).feasible()) {
        throw std::invalid_argument("ratio_report: certificate is infeasible");
      }
      ref = reference.certificate->length();
      break;
    case ReferenceKind::kLowerBound:
      ref = max_pair_distance(work);
      break;
  }
  if (ref.is_zero()) throw std::invalid_argument("ratio_report: zero reference");

  for (const auto& cfg : algorithms) {
    RatioRow row;
    row.algorithm = to_string(cfg.algorithm) + "/" + to_string(cfg.backend);
    row.n = work.size();
    row.d = work.dim;
    const auto start = std::chrono::steady_clock::now();
    const RectilinearNetwork net = solve_gmmn(work, cfg);
    row.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const FeasibilityReport check = verify_instance(net, work);
    if (!check.feasible()) {
      const auto& v = check.violations.front();
      throw InfeasibleOutput(row.algorithm + ": pair " + std::to_string(v.pair_index) + " " + to_string(v.kind));
    }
    row.cost = net.length();
    row.reference = ref;
    row.ratio = row.cost / ref;
    row.flagged = row.ratio < Rational(1);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace gmmn
