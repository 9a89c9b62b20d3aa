#include "membership_lp.hpp"

#include <algorithm>

namespace onion::detail {

namespace {

bool fits_int64(const Scalar& v) {
    static const Scalar lo(std::numeric_limits<std::int64_t>::min());
    static const Scalar hi(std::numeric_limits<std::int64_t>::max());
    return v >= lo && v <= hi;
}

Scalar gcd_of(const std::vector<Scalar>& v) {
    Scalar g = 0;
    for (const Scalar& x : v) g = boost::multiprecision::gcd(g, x);
    return g;
}

}  // namespace

template <class T>
MembershipResult solve_membership(std::span<const T> subject, const ColumnMatrix<T>& columns,
                                  std::size_t skip) {
    const std::size_t d = columns.dim;
    const std::size_t m = d + 1;
    const std::size_t n = columns.size();
    if (subject.size() != d) throw DomainError("subject and columns differ in dimension");

    // Rows are negated where the right-hand side is negative so that the artificial
    // basis starts feasible. Row 0 is the sum-to-one constraint.
    std::vector<int> row_sign(m, 1);
    std::vector<Rational> xb(m);
    xb[0] = 1;
    for (std::size_t k = 0; k < d; ++k) {
        Scalar b = to_scalar(subject[k]);
        if (b.sign() < 0) {
            row_sign[k + 1] = -1;
            b = -b;
        }
        xb[k + 1] = Rational(b);
    }

    std::vector<Rational> binv(m * m);
    for (std::size_t i = 0; i < m; ++i) binv[i * m + i] = 1;
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;
    auto artificial = [n](std::size_t v) { return v >= n; };

    MembershipResult res;
    std::vector<Rational> y(m), u(m), a(m);
    std::vector<Scalar> z(m);
    std::vector<std::int64_t> z64(m);

    while (true) {
        // Phase-1 duals: y = c_B^T B^{-1}, with cost 1 on artificials.
        for (auto& v : y) v = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!artificial(basis[i])) continue;
            for (std::size_t r = 0; r < m; ++r) y[r] += binv[i * m + r];
        }
        Scalar denom = 1;
        for (const Rational& v : y) {
            denom = boost::multiprecision::lcm(denom, boost::multiprecision::denominator(v));
        }
        bool small = true;
        for (std::size_t r = 0; r < m; ++r) {
            z[r] = boost::multiprecision::numerator(y[r]) *
                   (denom / boost::multiprecision::denominator(y[r])) * row_sign[r];
            if (small && fits_int64(z[r])) {
                z64[r] = z[r].template convert_to<std::int64_t>();
            } else {
                small = false;
            }
        }

        // Entering variable: the lowest index with negative reduced cost, i.e. w.(1,s_j) > 0.
        std::size_t enter = kNoColumn;
        if constexpr (std::is_same_v<T, std::int64_t>) {
            if (small) {
                for (std::size_t j = 0; j < n && enter == kNoColumn; ++j) {
                    if (j == skip) continue;
                    const std::int64_t* col = columns.data.data() + j * d;
                    __int128 acc = z64[0];
                    for (std::size_t k = 0; k < d; ++k) acc += static_cast<__int128>(z64[k + 1]) * col[k];
                    if (acc > 0) enter = j;
                }
            }
        }
        if (enter == kNoColumn && !(std::is_same_v<T, std::int64_t> && small)) {
            Scalar acc;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == skip) continue;
                auto col = columns.column(j);
                acc = z[0];
                for (std::size_t k = 0; k < d; ++k) acc += z[k + 1] * to_scalar(col[k]);
                if (acc.sign() > 0) {
                    enter = j;
                    break;
                }
            }
        }
        if (enter == kNoColumn) {
            for (std::size_t r = 0; r < m; ++r) {
                const bool basic = std::find(basis.begin(), basis.end(), n + r) != basis.end();
                if (!basic && y[r] > 1) {
                    enter = n + r;
                    break;
                }
            }
        }
        if (enter == kNoColumn) break;

        if (artificial(enter)) {
            for (std::size_t r = 0; r < m; ++r) a[r] = (r == enter - n) ? 1 : 0;
        } else {
            auto col = columns.column(enter);
            a[0] = 1;
            for (std::size_t k = 0; k < d; ++k) a[k + 1] = Rational(to_scalar(col[k]) * row_sign[k + 1]);
        }
        for (std::size_t i = 0; i < m; ++i) {
            u[i] = 0;
            for (std::size_t r = 0; r < m; ++r) {
                if (a[r].sign() != 0) u[i] += binv[i * m + r] * a[r];
            }
        }

        std::size_t leave = kNoColumn;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (u[i].sign() <= 0) continue;
            Rational ratio = xb[i] / u[i];
            if (leave == kNoColumn || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = std::move(ratio);
            }
        }
        if (leave == kNoColumn) throw InternalInconsistency("phase-1 LP reported unbounded");

        const Rational pivot = u[leave];
        for (std::size_t r = 0; r < m; ++r) binv[leave * m + r] /= pivot;
        xb[leave] /= pivot;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || u[i].sign() == 0) continue;
            const Rational f = u[i];
            for (std::size_t r = 0; r < m; ++r) {
                if (binv[leave * m + r].sign() != 0) binv[i * m + r] -= f * binv[leave * m + r];
            }
            xb[i] -= f * xb[leave];
        }
        basis[leave] = enter;
        ++res.pivots;
    }

    Rational objective = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (artificial(basis[i])) objective += xb[i];
    }
    if (objective.sign() == 0) {
        res.feasible = true;
        for (std::size_t i = 0; i < m; ++i) {
            if (!artificial(basis[i]) && xb[i].sign() > 0) res.combination.emplace_back(basis[i], xb[i]);
        }
        std::sort(res.combination.begin(), res.combination.end(),
                  [](const auto& l, const auto& r) { return l.first < r.first; });
    } else {
        const Scalar g = gcd_of(z);
        res.separator = z;
        if (g > 1) {
            for (Scalar& v : res.separator) v /= g;
        }
    }
    return res;
}

template MembershipResult solve_membership<std::int64_t>(std::span<const std::int64_t>,
                                                         const ColumnMatrix<std::int64_t>&, std::size_t);
template MembershipResult solve_membership<Scalar>(std::span<const Scalar>, const ColumnMatrix<Scalar>&,
                                                   std::size_t);

}  // namespace onion::detail
