#include "onion/hull.hpp"

#include <algorithm>
#include <map>

#include "lattice.hpp"
#include "membership_lp.hpp"

namespace onion {

ExtremenessQuery::ExtremenessQuery(Point subject, const PointSet& ambient)
    : subject_(std::move(subject)), ambient_(ambient) {
    if (subject_.dimension() != ambient.dimension()) {
        throw DomainError("subject dimension " + std::to_string(subject_.dimension()) +
                          " does not match ambient dimension " + std::to_string(ambient.dimension()));
    }
    if (!ambient.contains(subject_)) {
        throw DomainError("subject " + subject_.to_string() + " is not a member of the ambient set");
    }
}

bool ConvexCombinationWitness::verifies(const Point& subject) const {
    if (support.empty()) return false;
    const std::size_t d = subject.dimension();
    Rational total = 0;
    std::vector<Rational> sum(d);
    for (const WitnessTerm& t : support) {
        if (t.point.dimension() != d || t.coefficient.sign() < 0 || t.point == subject) return false;
        total += t.coefficient;
        for (std::size_t k = 0; k < d; ++k) sum[k] += t.coefficient * Rational(t.point[k]);
    }
    if (total != 1) return false;
    for (std::size_t k = 0; k < d; ++k) {
        if (sum[k] != Rational(subject[k])) return false;
    }
    return true;
}

namespace {

/// A nonzero mu with sum(mu_i * (1, s_i)) = 0, if the lifted points are dependent.
std::optional<std::vector<Rational>> affine_dependence(const std::vector<WitnessTerm>& terms) {
    const std::size_t k = terms.size();
    const std::size_t rows = terms.front().point.dimension() + 1;
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(k));
    for (std::size_t j = 0; j < k; ++j) {
        a[0][j] = 1;
        for (std::size_t r = 1; r < rows; ++r) a[r][j] = Rational(terms[j].point[r - 1]);
    }
    // Reduced row echelon form; any free column yields a null vector.
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    std::vector<bool> is_pivot(k, false);
    for (std::size_t c = 0; c < k && row < rows; ++c) {
        std::size_t p = row;
        while (p < rows && a[p][c].sign() == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[row]);
        const Rational inv = 1 / a[row][c];
        for (auto& v : a[row]) v *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || a[r][c].sign() == 0) continue;
            const Rational f = a[r][c];
            for (std::size_t j = 0; j < k; ++j) a[r][j] -= f * a[row][j];
        }
        pivot_col.push_back(c);
        is_pivot[c] = true;
        ++row;
    }
    for (std::size_t f = 0; f < k; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> mu(k);
        mu[f] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r) mu[pivot_col[r]] = -a[r][f];
        return mu;
    }
    return std::nullopt;
}

}  // namespace

ConvexCombinationWitness caratheodory_reduce(ConvexCombinationWitness w, const Point& subject) {
    // Merge repeated support points and drop zero weights first.
    std::map<Point, Rational> merged;
    for (auto& t : w.support) merged[t.point] += t.coefficient;
    w.support.clear();
    for (auto& [p, c] : merged) {
        if (c.sign() != 0) w.support.push_back({p, c});
    }
    while (w.support.size() > 1) {
        auto mu = affine_dependence(w.support);
        if (!mu) break;
        // mu sums to zero and is nonzero, so it has a positive entry.
        std::optional<Rational> step;
        for (std::size_t i = 0; i < mu->size(); ++i) {
            if ((*mu)[i].sign() <= 0) continue;
            Rational r = w.support[i].coefficient / (*mu)[i];
            if (!step || r < *step) step = r;
        }
        std::vector<WitnessTerm> next;
        for (std::size_t i = 0; i < w.support.size(); ++i) {
            Rational c = w.support[i].coefficient - *step * (*mu)[i];
            if (c.sign() > 0) next.push_back({w.support[i].point, std::move(c)});
        }
        w.support = std::move(next);
    }
    if (!w.verifies(subject)) throw InternalInconsistency("Caratheodory reduction broke the witness");
    return w;
}

namespace {

template <class T>
ExtremenessResult is_extreme_impl(const ExtremenessQuery& q) {
    const PointSet& s = q.ambient();
    detail::ColumnMatrix<T> cols{s.dimension(), {}};
    std::vector<const Point*> owners;
    for (const Point& p : s) {
        if (p == q.subject()) continue;
        detail::append_coords(p, cols.data);
        owners.push_back(&p);
    }
    std::vector<T> subject;
    detail::append_coords(q.subject(), subject);
    auto lp = detail::solve_membership<T>(subject, cols);

    ExtremenessResult out;
    if (lp.feasible) {
        ConvexCombinationWitness w;
        for (auto& [j, c] : lp.combination) w.support.push_back({*owners[j], c});
        out.witness = caratheodory_reduce(std::move(w), q.subject());
    } else {
        out.extreme = true;
        if (!owners.empty()) out.separator = std::move(lp.separator);
    }
    return out;
}

}  // namespace

ExtremenessResult is_extreme(const ExtremenessQuery& q) {
    if (q.ambient().size() == 1) return ExtremenessResult{true, std::nullopt, {}};
    if (detail::fits_machine(q.ambient())) return is_extreme_impl<std::int64_t>(q);
    return is_extreme_impl<Scalar>(q);
}

namespace {

template <class T>
PointSet extreme_points_impl(const PointSet& s) {
    const std::size_t d = s.dimension();
    detail::ColumnMatrix<T> all{d, {}};
    for (const Point& p : s) detail::append_coords(p, all.data);
    detail::CoordIndex<T> index(all);

    // Midpoints of two members are never vertices; every vertex survives this filter,
    // so testing survivors against survivors decides extremeness in the full set.
    std::vector<std::size_t> survivors;
    std::vector<T> plus(d), minus(d);
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto x = all.column(i);
        bool midpoint = false;
        for (std::size_t k = 0; k < d && !midpoint; ++k) {
            std::copy(x.begin(), x.end(), plus.begin());
            std::copy(x.begin(), x.end(), minus.begin());
            plus[k] += 1;
            minus[k] -= 1;
            midpoint = index.find(plus) && index.find(minus);
        }
        if (!midpoint) survivors.push_back(i);
    }
    detail::ColumnMatrix<T> cols{d, {}};
    for (std::size_t i : survivors) {
        auto x = all.column(i);
        cols.data.insert(cols.data.end(), x.begin(), x.end());
    }
    std::vector<Point> out;
    for (std::size_t j = 0; j < survivors.size(); ++j) {
        if (!detail::solve_membership<T>(cols.column(j), cols, j).feasible) out.push_back(s[survivors[j]]);
    }
    return PointSet(d, std::move(out));
}

}  // namespace

PointSet extreme_points(const PointSet& s) {
    if (s.empty()) throw DomainError("extreme_points of an empty set");
    if (detail::fits_machine(s)) return extreme_points_impl<std::int64_t>(s);
    return extreme_points_impl<Scalar>(s);
}

namespace {

struct BruteForceSearch {
    std::size_t rows;
    std::vector<std::vector<Scalar>> lifted;  // (1, s_i) for each candidate
    std::vector<Scalar> target;               // (1, subject)

    // Along the current DFS path: echelon basis vectors with their pivot rows, the
    // target's residual after reduction, and the chosen candidate indices.
    std::vector<std::vector<Scalar>> basis;
    std::vector<std::size_t> pivots;
    std::vector<std::vector<Scalar>> residual;
    std::vector<std::size_t> chosen;

    static void reduce(std::vector<Scalar>& v, const std::vector<Scalar>& b, std::size_t piv) {
        if (v[piv].sign() == 0) return;
        const Scalar f = v[piv];
        const Scalar g = b[piv];
        for (std::size_t r = 0; r < v.size(); ++r) v[r] = g * v[r] - f * b[r];
        Scalar c = 0;
        for (const Scalar& x : v) c = boost::multiprecision::gcd(c, x);
        if (c > 1) {
            for (Scalar& x : v) x /= c;
        }
    }

    bool barycentric_nonnegative() const {
        // Unique solution exists; solve it over the rationals.
        const std::size_t k = chosen.size();
        std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(k + 1));
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t j = 0; j < k; ++j) a[r][j] = Rational(lifted[chosen[j]][r]);
            a[r][k] = Rational(target[r]);
        }
        std::size_t row = 0;
        std::vector<std::size_t> where(k);
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t p = row;
            while (p < rows && a[p][c].sign() == 0) ++p;
            std::swap(a[p], a[row]);
            const Rational inv = 1 / a[row][c];
            for (auto& v : a[row]) v *= inv;
            for (std::size_t r = 0; r < rows; ++r) {
                if (r == row || a[r][c].sign() == 0) continue;
                const Rational f = a[r][c];
                for (std::size_t j = 0; j <= k; ++j) a[r][j] -= f * a[row][j];
            }
            where[c] = row++;
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (a[where[c]][k].sign() < 0) return false;
        }
        return true;
    }

    bool contained(std::size_t start) {
        for (std::size_t i = start; i < lifted.size(); ++i) {
            std::vector<Scalar> v = lifted[i];
            for (std::size_t b = 0; b < basis.size(); ++b) reduce(v, basis[b], pivots[b]);
            auto nz = std::find_if(v.begin(), v.end(), [](const Scalar& x) { return x.sign() != 0; });
            if (nz == v.end()) continue;  // dependent on the prefix; so is every superset
            const std::size_t piv = static_cast<std::size_t>(nz - v.begin());
            std::vector<Scalar> r = residual.empty() ? target : residual.back();
            reduce(r, v, piv);

            basis.push_back(std::move(v));
            pivots.push_back(piv);
            residual.push_back(std::move(r));
            chosen.push_back(i);

            const bool zero = std::all_of(residual.back().begin(), residual.back().end(),
                                          [](const Scalar& x) { return x.sign() == 0; });
            if (zero && barycentric_nonnegative()) return true;
            if (chosen.size() < rows && contained(i + 1)) return true;

            basis.pop_back();
            pivots.pop_back();
            residual.pop_back();
            chosen.pop_back();
        }
        return false;
    }
};

}  // namespace

bool brute_force_is_extreme(const ExtremenessQuery& q, std::size_t cap) {
    const PointSet& s = q.ambient();
    if (s.size() > cap) {
        throw SizeLimitError("brute-force oracle limited to " + std::to_string(cap) + " points, got " +
                                 std::to_string(s.size()),
                             Scalar(s.size()));
    }
    BruteForceSearch search;
    search.rows = s.dimension() + 1;
    for (const Point& p : s) {
        if (p == q.subject()) continue;
        std::vector<Scalar> v{1};
        v.insert(v.end(), p.coords().begin(), p.coords().end());
        search.lifted.push_back(std::move(v));
    }
    search.target.push_back(1);
    search.target.insert(search.target.end(), q.subject().coords().begin(), q.subject().coords().end());
    return !search.contained(0);
}

}  // namespace onion
