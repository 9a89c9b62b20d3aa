#pragma once

#include <cstddef>
#include <vector>

#include "onion/core.hpp"
#include "onion/peel.hpp"

namespace onion {

/// Element of the hyperoctahedral group: (g.x)_i = signs[i] * x[permutation[i]].
struct SignedPermutation {
    std::vector<std::size_t> permutation;
    std::vector<int> signs;

    static SignedPermutation identity(std::size_t d);
    Point apply(const Point& x) const;
};

/// All 2^d * d! elements, in a fixed order. Throws SizeLimitError for d > 8.
std::vector<SignedPermutation> hyperoctahedral_group(std::size_t d);

struct Orbit {
    Point representative;  ///< nonnegative, nonincreasing coordinates
    Scalar size;
};

/// The orbit member with nonnegative, nonincreasing coordinates.
Point canonicalize(const Point& p);

/// Representative plus 2^z * d! / prod(m_v!) (z nonzero coordinates, m_v multiplicities).
Orbit orbit_of(const Point& p);

/// Every distinct image of `p`, lexicographically ordered.
std::vector<Point> expand_orbit(const Point& p);

/// Peels the grid testing one canonical representative per orbit; each verdict applies
/// to the whole orbit. Result is identical to peel(materialize(g)).
LayerAssignment peel_orbits(const Grid& g, const PeelOptions& options = {},
                            std::uint64_t cap = kDefaultPointCap);

/// As above for a materialized set; throws DomainError unless `s` is a centered grid.
LayerAssignment peel_orbits(const PointSet& s, const PeelOptions& options = {});

}  // namespace onion
