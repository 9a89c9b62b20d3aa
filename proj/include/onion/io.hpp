#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "onion/certify.hpp"
#include "onion/core.hpp"
#include "onion/peel.hpp"

namespace onion::io {

/// Whitespace-separated integer rows, one point per row; '#' starts a comment.
/// Throws ParseError on non-integers, ragged rows or an empty file.
PointSet read_points(std::istream& in);

/// {"d":..,"n":..,"num_layers":..,"layers":[[[x,..],..],..]}; n is null for non-grids.
/// Layers run 1..L and points inside a layer are lexicographic. Coordinates that do not
/// fit a 64-bit integer are written as decimal strings.
std::string layers_to_json(const LayerAssignment& a, std::optional<std::uint64_t> n);

struct ParsedLayers {
    std::size_t dimension = 0;
    std::optional<std::uint64_t> n;
    LayerAssignment assignment;
};
ParsedLayers layers_from_json(const std::string& text);

/// One row per point: coordinates, then layer index.
std::string layers_to_csv(const LayerAssignment& a);

/// Maps centered coordinates to the [1, 2n+1] convention for output.
LayerAssignment to_one_based(const LayerAssignment& a, std::uint64_t n);

struct GrowthFit {
    double slope = 0;
    double intercept = 0;
};
/// Least-squares line through (log side, log layers). Needs two distinct sides.
GrowthFit fit_log_log(const std::vector<std::uint64_t>& sides, const std::vector<std::uint64_t>& layers);

}  // namespace onion::io
