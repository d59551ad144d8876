#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmmn/geometry.hpp"
#include "gmmn/rsa.hpp"
#include "gmmn/stabbing.hpp"

namespace gmmn {

enum class Algorithm { kRecursiveD, kImproved2D };

std::string to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct SolverConfig {
  Algorithm algorithm = Algorithm::kRecursiveD;
  SteinerBackend backend = SteinerBackend::kMstRectilinear;
  bool parallel = false;

  /// Throws std::invalid_argument for improved-2d on d != 2.
  void validate(int dim) const;
};

struct SplitResult {
  Instance left;
  Instance mid;
  Instance right;
  Rational median;
  int axis = 0;
};

/// Splits at the lower median of the 2n coordinates on `axis`. Pairs strictly on one
/// side go left/right; the rest (touching or straddling) go to `mid`, which gains
/// the separator. Throws std::invalid_argument on an empty instance.
SplitResult median_split(const Instance& inst, int axis);

/// Full pipeline; the result is canonical.
RectilinearNetwork solve_gmmn(const Instance& inst, const SolverConfig& cfg);

/// All boxes contain the separator point s_1..s_d: one arborescence rooted at s.
RectilinearNetwork solve_d_separated(const Instance& inst, SteinerBackend backend);

/// Boxes crossing x = 0 grouped by connectivity of their union, with the merged
/// y-interval on the axis.
struct AxisComponent {
  Instance pairs;
  Interval span;
};
std::vector<AxisComponent> connected_components_on_axis(const Instance& inst);

/// Everything built for one component of an x-separated instance (coordinates
/// already shifted so the separator is x = 0).
struct ImprovedComponentTrace {
  AxisComponent component;
  Point top;
  Point bottom;
  std::vector<Point> low_terminals;   // rooted at `top`
  std::vector<Point> high_terminals;  // rooted at `bottom`
  RsaResult up;
  RsaResult down;
  Stabbing stabbing;
  RectilinearNetwork network;  // canonical, in shifted coordinates
};

std::vector<ImprovedComponentTrace> trace_x_separated_improved(const Instance& inst, const Rational& separator,
                                                               SteinerBackend backend);

/// Stabbing plus two arborescences per component; every pair must straddle x = separator.
RectilinearNetwork solve_x_separated_improved(const Instance& inst, const Rational& separator,
                                              SteinerBackend backend);

}  // namespace gmmn
