#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmmn/geometry.hpp"
#include "gmmn/solver.hpp"

namespace gmmn {

inline constexpr std::size_t kExactGmmnMaxPairs = 3;
inline constexpr std::size_t kExactGmmnMaxGridPerAxis = 6;

/// Optimum over Hanan-grid networks (opt_H), split by axis.
struct GmmnOptimum {
  RectilinearNetwork network;  // canonical
  Rational cost;
  Rational horizontal;  // total length along axis 0
  Rational vertical;    // total length along axis 1
};

/// Branch-and-bound over one monotone Hanan-grid path per pair. d = 2 only;
/// throws std::length_error above the caps and std::invalid_argument for d != 2.
GmmnOptimum exact_gmmn(const Instance& inst);

struct TightFamily {
  Instance instance;
  RectilinearNetwork certificate;
  Rational epsilon;
  int k = 0;
};

/// Adversarial arrangement A(2^k - 1). The top-level square is [-1,0]^2; the two
/// half-size copies sit at offset (eps, eps) scaled by eps and strictly inside the
/// square scaled by 1 - eps. Certificate: one monotone chain through every corner.
/// Throws std::invalid_argument unless k >= 0 and 0 < eps < 1/4.
TightFamily gen_tight(int k, const Rational& epsilon = Rational(1, 16));

/// Seeded std::mt19937_64 with rejection sampling for bounded integers; the stream
/// of values is the same on every platform.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

struct GeneratedInstance {
  Instance instance;
  std::uint64_t seed = 0;
  std::string provenance;
};

/// n pairs of distinct points with integer coordinates uniform in [lo, hi].
/// Throws std::invalid_argument for n < 1, d < 2, lo > hi, and "empty instance"
/// when lo == hi (every pair would be degenerate).
GeneratedInstance gen_random(std::size_t n, int d, std::int64_t lo, std::int64_t hi, std::uint64_t seed);

/// n random distinct points (same ranges and RNG as gen_random) turned into all pairs.
GeneratedInstance gen_random_mmn(std::size_t points, int d, std::int64_t lo, std::int64_t hi, std::uint64_t seed);

/// All unordered pairs over the distinct points, in first-occurrence order.
/// Throws std::invalid_argument for fewer than two distinct points.
Instance mmn_from_points(std::span<const Point> points);

/// Largest pair distance; every feasible network is at least this long.
Rational max_pair_distance(const Instance& inst);

enum class ReferenceKind { kOracle, kCertificate, kLowerBound };

std::string to_string(ReferenceKind r);
std::optional<ReferenceKind> parse_reference(std::string_view name);

struct Reference {
  ReferenceKind kind = ReferenceKind::kLowerBound;
  std::optional<RectilinearNetwork> certificate;  // required for kCertificate
};

struct RatioRow {
  std::string algorithm;  // "<algo>/<rsa>"
  std::size_t n = 0;
  int d = 0;
  Rational cost;
  Rational reference;
  Rational ratio;
  double runtime_seconds = 0;
  /// Ratio below 1 against a reference that is not a lower bound.
  bool flagged = false;
};

struct RatioReport {
  ReferenceKind reference_kind = ReferenceKind::kLowerBound;
  std::vector<RatioRow> rows;
};

/// An algorithm returned a network failing verify_instance.
class InfeasibleOutput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs every configuration, verifies each output (InfeasibleOutput on failure)
/// and divides its cost by the reference. Degenerate and duplicate pairs are
/// dropped first; an instance with zero reference throws std::invalid_argument.
RatioReport ratio_report(const Instance& inst, std::span<const SolverConfig> algorithms, const Reference& reference);

}  // namespace gmmn
