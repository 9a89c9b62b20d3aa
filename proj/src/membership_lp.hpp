#pragma once
// Exact phase-1 simplex deciding whether a point is a convex combination of columns:
//   find lambda >= 0 with sum(lambda) = 1 and sum(lambda_j * s_j) = subject.

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "lattice.hpp"

namespace onion::detail {

struct MembershipResult {
    bool feasible = false;
    /// (column, coefficient) pairs with positive coefficients; at most dim+1 of them.
    std::vector<std::pair<std::size_t, Rational>> combination;
    /// Farkas functional (w0, w1..wd) with w0 + w.s <= 0 on every column and
    /// w0 + w.subject > 0. Present iff infeasible.
    std::vector<Scalar> separator;
    std::size_t pivots = 0;
};

inline constexpr std::size_t kNoColumn = std::numeric_limits<std::size_t>::max();

/// Column `skip` (if any) is ignored. Bland's rule for entering and leaving variables.
template <class T>
MembershipResult solve_membership(std::span<const T> subject, const ColumnMatrix<T>& columns,
                                  std::size_t skip = kNoColumn);

extern template MembershipResult solve_membership<std::int64_t>(std::span<const std::int64_t>,
                                                                const ColumnMatrix<std::int64_t>&,
                                                                std::size_t);
extern template MembershipResult solve_membership<Scalar>(std::span<const Scalar>,
                                                          const ColumnMatrix<Scalar>&, std::size_t);

}  // namespace onion::detail
