#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "onion/core.hpp"

namespace onion {

/// Layer index (1-based) of every point of a peeled set.
class LayerAssignment {
public:
    /// `layer_of[i]` is the layer of `source[i]`. Validates that indices are in
    /// [1, num_layers] and every layer is nonempty.
    LayerAssignment(PointSet source, std::vector<std::uint32_t> layer_of);

    const PointSet& source() const noexcept { return source_; }
    std::uint32_t num_layers() const noexcept { return num_layers_; }
    std::span<const std::uint32_t> indices() const noexcept { return layer_of_; }

    /// Throws DomainError when `p` is not in the source.
    std::uint32_t layer_of(const Point& p) const;

    /// Layers 1..L; points inside each layer are in lexicographic order.
    std::vector<std::vector<Point>> layers() const;
    std::vector<std::size_t> layer_sizes() const;

    /// C_i: the points still present when layer i is peeled.
    PointSet remaining_at(std::uint32_t layer) const;

    friend bool operator==(const LayerAssignment&, const LayerAssignment&) = default;

private:
    PointSet source_;
    std::vector<std::uint32_t> layer_of_;
    std::uint32_t num_layers_ = 0;
};

enum class Engine {
    automatic,  ///< planar for d = 2, generic otherwise
    generic,
    orbit,   ///< grids only
    planar,  ///< d = 2 only
};

struct PeelOptions {
    Engine engine = Engine::automatic;
    unsigned threads = 1;
    /// Reuse witnesses across layers. Off means every remaining point is re-tested
    /// against every remaining point at each layer (slow reference mode).
    bool reuse_witnesses = true;
};

/// Convex layers of `s`. Throws DomainError on an empty set or an engine/input mismatch.
LayerAssignment peel(const PointSet& s, const PeelOptions& options = {});

/// Planar peeler: one lexicographic sort, then a monotone-chain hull per layer on the
/// shrinking array. Collinear boundary points are not vertices.
LayerAssignment peel_2d(const PointSet& s);

/// Maximum squared norm on each layer, indexed by layer - 1.
std::vector<Scalar> layer_max_norm_sq(const LayerAssignment& a);

}  // namespace onion
