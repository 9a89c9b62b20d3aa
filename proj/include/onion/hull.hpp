#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "onion/core.hpp"

namespace onion {

/// Is `subject` a vertex of conv(ambient)? Construction checks subject is in ambient.
class ExtremenessQuery {
public:
    ExtremenessQuery(Point subject, const PointSet& ambient);

    const Point& subject() const noexcept { return subject_; }
    const PointSet& ambient() const noexcept { return ambient_.get(); }

private:
    Point subject_;
    std::reference_wrapper<const PointSet> ambient_;
};

struct WitnessTerm {
    Point point;
    Rational coefficient;
};

/// subject = sum(coefficient_i * point_i), coefficients nonnegative and summing to one.
struct ConvexCombinationWitness {
    std::vector<WitnessTerm> support;

    /// Exact re-check: nonnegative coefficients, unit sum, weighted sum equal to `subject`,
    /// and no support point equal to `subject`.
    bool verifies(const Point& subject) const;
};

/// Shrinks a witness to at most d+1 affinely independent support points.
ConvexCombinationWitness caratheodory_reduce(ConvexCombinationWitness w, const Point& subject);

struct ExtremenessResult {
    bool extreme = false;
    /// Present iff !extreme.
    std::optional<ConvexCombinationWitness> witness;
    /// Present iff extreme and the ambient has other points: (w0, w) with
    /// w0 + w.s <= 0 for every other point s and w0 + w.subject > 0.
    std::vector<Scalar> separator;
};

/// Exact LP decision. Never uses floating point.
ExtremenessResult is_extreme(const ExtremenessQuery& q);

/// The vertices of conv(s), in lexicographic order.
PointSet extreme_points(const PointSet& s);

inline constexpr std::size_t kBruteForceCap = 64;

/// Independent oracle: enumerates affinely independent subsets of size <= d+1 and solves
/// for barycentric coordinates. Combinatorial; throws SizeLimitError above `cap`.
bool brute_force_is_extreme(const ExtremenessQuery& q, std::size_t cap = kBruteForceCap);

}  // namespace onion
