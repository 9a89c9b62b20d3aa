#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace onion {

/// Exact signed integer. Every coordinate and squared norm lives here.
using Scalar = boost::multiprecision::mpz_int;
/// Reduced fraction with positive denominator; used inside the LP and witnesses.
using Rational = boost::multiprecision::mpq_rational;

class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SizeLimitError : public std::length_error {
public:
    SizeLimitError(const std::string& what, Scalar count)
        : std::length_error(what), count_(std::move(count)) {}
    const Scalar& count() const noexcept { return count_; }

private:
    Scalar count_;
};

/// Raised when a result that must hold mathematically does not (a bug, not bad input).
class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class Point {
public:
    explicit Point(std::vector<Scalar> coords);
    Point(std::initializer_list<long long> coords);

    std::size_t dimension() const noexcept { return coords_.size(); }
    const Scalar& operator[](std::size_t k) const { return coords_[k]; }
    std::span<const Scalar> coords() const noexcept { return coords_; }

    static Point origin(std::size_t d);

    friend bool operator==(const Point&, const Point&) = default;
    friend std::strong_ordering operator<=>(const Point& a, const Point& b);

    std::string to_string() const;

private:
    std::vector<Scalar> coords_;
};

Scalar norm_sq(const Point& p);

/// Sorted (lexicographic), duplicate-free, single-dimension collection of points.
class PointSet {
public:
    PointSet(std::size_t dimension, std::vector<Point> points);

    std::size_t dimension() const noexcept { return dimension_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }

    auto begin() const noexcept { return points_.begin(); }
    auto end() const noexcept { return points_.end(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<Point>& points() const noexcept { return points_; }

    bool contains(const Point& p) const;
    std::optional<std::size_t> index_of(const Point& p) const;

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::size_t dimension_;
    std::vector<Point> points_;
};

/// The centered grid [-radius, radius]^dimension.
struct Grid {
    std::size_t dimension = 1;
    std::uint64_t radius = 0;

    Scalar point_count() const;
    std::uint64_t side() const noexcept { return 2 * radius + 1; }
    friend bool operator==(const Grid&, const Grid&) = default;
};

inline constexpr std::uint64_t kDefaultPointCap = 4'000'000;

/// Enumerates the grid in lexicographic order. Throws SizeLimitError above `cap`.
PointSet materialize(const Grid& g, std::uint64_t cap = kDefaultPointCap);

/// Same, for the raw box [lo, hi]^d (even sides, one-based input).
PointSet materialize_box(std::size_t d, const Scalar& lo, const Scalar& hi,
                         std::uint64_t cap = kDefaultPointCap);

/// [1, 2n+1]^d -> [-n, n]^d. Throws DomainError on out-of-range coordinates.
Point translate_convention(const Point& p, std::uint64_t n);
/// Inverse of translate_convention.
Point untranslate_convention(const Point& p, std::uint64_t n);

/// The grid whose materialization equals `s`, if any.
std::optional<Grid> detect_grid(const PointSet& s);

}  // namespace onion
