#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmmn/geometry.hpp"

namespace gmmn {

struct SvgOptions {
  bool show_separators = true;
  bool label_pairs = true;
};

/// Deterministic SVG scene of a 2D instance: dashed bounding boxes, labeled terminals,
/// and the network (if any) as solid polylines. The view box is the data hull plus a
/// 5% margin. Throws std::invalid_argument for d != 2 or an empty instance.
std::string render_svg(const Instance& inst, const RectilinearNetwork* network = nullptr,
                       const SvgOptions& options = {});

/// Network segments chained into maximal polylines through endpoints of degree two.
std::vector<std::vector<Point>> network_polylines(const RectilinearNetwork& net);

}  // namespace gmmn
