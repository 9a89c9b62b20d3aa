#include "onion/core.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace onion {

Point::Point(std::vector<Scalar> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw DomainError("point dimension must be at least 1");
}

Point::Point(std::initializer_list<long long> coords) {
    if (coords.size() == 0) throw DomainError("point dimension must be at least 1");
    coords_.reserve(coords.size());
    for (long long c : coords) coords_.emplace_back(c);
}

Point Point::origin(std::size_t d) { return Point(std::vector<Scalar>(d, Scalar(0))); }

std::strong_ordering operator<=>(const Point& a, const Point& b) {
    const std::size_t n = std::min(a.dimension(), b.dimension());
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k] < b[k]) return std::strong_ordering::less;
        if (b[k] < a[k]) return std::strong_ordering::greater;
    }
    return a.dimension() <=> b.dimension();
}

std::string Point::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < coords_.size(); ++k) {
        if (k) os << ',';
        os << coords_[k];
    }
    os << ')';
    return os.str();
}

Scalar norm_sq(const Point& p) {
    Scalar s = 0;
    for (const Scalar& c : p.coords()) s += c * c;
    return s;
}

PointSet::PointSet(std::size_t dimension, std::vector<Point> points)
    : dimension_(dimension), points_(std::move(points)) {
    if (dimension_ == 0) throw DomainError("point set dimension must be at least 1");
    for (const Point& p : points_) {
        if (p.dimension() != dimension_) {
            throw DomainError("point " + p.to_string() + " has dimension " +
                              std::to_string(p.dimension()) + ", expected " +
                              std::to_string(dimension_));
        }
    }
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

std::optional<std::size_t> PointSet::index_of(const Point& p) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), p);
    if (it == points_.end() || !(*it == p)) return std::nullopt;
    return static_cast<std::size_t>(it - points_.begin());
}

bool PointSet::contains(const Point& p) const { return index_of(p).has_value(); }

Scalar Grid::point_count() const {
    Scalar side = 2 * Scalar(radius) + 1;
    Scalar total = 1;
    for (std::size_t k = 0; k < dimension; ++k) total *= side;
    return total;
}

PointSet materialize_box(std::size_t d, const Scalar& lo, const Scalar& hi, std::uint64_t cap) {
    if (d == 0) throw DomainError("grid dimension must be at least 1");
    if (hi < lo) throw DomainError("empty box");
    Scalar side = hi - lo + 1;
    Scalar total = 1;
    for (std::size_t k = 0; k < d; ++k) total *= side;
    if (total > cap) {
        throw SizeLimitError("grid has " + total.str() + " points, above the cap of " +
                                 std::to_string(cap),
                             total);
    }
    std::vector<Point> pts;
    pts.reserve(total.convert_to<std::size_t>());
    std::vector<Scalar> cur(d, lo);
    while (true) {
        pts.emplace_back(cur);
        std::size_t k = d;
        while (k > 0) {
            --k;
            if (cur[k] < hi) {
                ++cur[k];
                break;
            }
            cur[k] = lo;
            if (k == 0) return PointSet(d, std::move(pts));
        }
    }
}

PointSet materialize(const Grid& g, std::uint64_t cap) {
    const Scalar n(g.radius);
    return materialize_box(g.dimension, -n, n, cap);
}

Point translate_convention(const Point& p, std::uint64_t n) {
    const Scalar shift = Scalar(n) + 1;
    const Scalar hi = 2 * Scalar(n) + 1;
    std::vector<Scalar> out;
    out.reserve(p.dimension());
    for (const Scalar& c : p.coords()) {
        if (c < 1 || c > hi) {
            throw DomainError("coordinate " + c.str() + " outside [1, " + hi.str() + "]");
        }
        out.push_back(c - shift);
    }
    return Point(std::move(out));
}

Point untranslate_convention(const Point& p, std::uint64_t n) {
    const Scalar shift = Scalar(n) + 1;
    const Scalar r(n);
    std::vector<Scalar> out;
    out.reserve(p.dimension());
    for (const Scalar& c : p.coords()) {
        if (c < -r || c > r) {
            throw DomainError("coordinate " + c.str() + " outside [-" + r.str() + ", " + r.str() + "]");
        }
        out.push_back(c + shift);
    }
    return Point(std::move(out));
}

std::optional<Grid> detect_grid(const PointSet& s) {
    if (s.empty()) return std::nullopt;
    // Lexicographic order puts the all-min corner first and the all-max corner last.
    const Point& lo = s[0];
    const Point& hi = s[s.size() - 1];
    const Scalar& n = hi[0];
    if (n < 0 || n > Scalar(std::numeric_limits<std::uint32_t>::max())) return std::nullopt;
    for (std::size_t k = 0; k < s.dimension(); ++k) {
        if (lo[k] != -n || hi[k] != n) return std::nullopt;
    }
    Grid g{s.dimension(), n.convert_to<std::uint64_t>()};
    if (g.point_count() != s.size()) return std::nullopt;
    // Every member lies in [-n,n]^d and the set is duplicate-free, so matching counts suffice.
    for (const Point& p : s) {
        for (const Scalar& c : p.coords()) {
            if (c < -n || c > n) return std::nullopt;
        }
    }
    return g;
}

}  // namespace onion
