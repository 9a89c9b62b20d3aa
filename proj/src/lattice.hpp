#pragma once
// Flat coordinate storage shared by the engines. T is either std::int64_t (when every
// coordinate is bounded by kMachineBound, so all products fit __int128) or Scalar.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "onion/core.hpp"

namespace onion::detail {

inline constexpr std::int64_t kMachineBound = std::int64_t{1} << 40;

/// Accumulator type for dot products of T coordinates.
template <class T>
struct Wide {
    using type = Scalar;
};
template <>
struct Wide<std::int64_t> {
    using type = __int128;
};
template <class T>
using wide_t = typename Wide<T>::type;

bool fits_machine(const PointSet& s);
bool fits_machine(const Point& p);

template <class T>
T to_coord(const Scalar& c) {
    if constexpr (std::is_same_v<T, Scalar>) {
        return c;
    } else {
        return c.convert_to<std::int64_t>();
    }
}

template <class T>
Scalar to_scalar(const T& c) {
    if constexpr (std::is_same_v<T, Scalar>) {
        return c;
    } else {
        return Scalar(c);
    }
}

template <class A>
int sign_of(const A& a) {
    if constexpr (std::is_same_v<A, Scalar>) {
        return a.sign();
    } else {
        return (a > 0) - (a < 0);
    }
}

template <class T>
Point to_point(std::span<const T> xs) {
    std::vector<Scalar> c;
    c.reserve(xs.size());
    for (const T& x : xs) c.push_back(to_scalar(x));
    return Point(std::move(c));
}

template <class T>
void append_coords(const Point& p, std::vector<T>& out) {
    for (const Scalar& c : p.coords()) out.push_back(to_coord<T>(c));
}

/// Columns stored contiguously, `dim` values each.
template <class T>
struct ColumnMatrix {
    std::size_t dim = 0;
    std::vector<T> data;

    std::size_t size() const noexcept { return dim ? data.size() / dim : 0; }
    std::span<const T> column(std::size_t j) const {
        return std::span<const T>(data).subspan(j * dim, dim);
    }
};

template <class T>
std::size_t hash_coords(std::span<const T> xs) {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const T& x : xs) {
        std::size_t v;
        if constexpr (std::is_same_v<T, Scalar>) {
            v = std::hash<Scalar>{}(x);
        } else {
            v = static_cast<std::size_t>(x);
        }
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
    }
    return h ^ (h >> 29);
}

/// Open-addressing map from a coordinate tuple (stored in `ColumnMatrix`) to its index.
template <class T>
class CoordIndex {
public:
    explicit CoordIndex(const ColumnMatrix<T>& keys) : keys_(&keys) {
        std::size_t cap = 16;
        while (cap < 2 * keys.size() + 1) cap <<= 1;
        slots_.assign(cap, kEmpty);
        for (std::size_t i = 0; i < keys.size(); ++i) insert(i);
    }

    std::optional<std::size_t> find(std::span<const T> x) const {
        const std::size_t mask = slots_.size() - 1;
        for (std::size_t s = hash_coords(x) & mask;; s = (s + 1) & mask) {
            const std::size_t v = slots_[s];
            if (v == kEmpty) return std::nullopt;
            if (equal(keys_->column(v), x)) return v;
        }
    }

private:
    static constexpr std::size_t kEmpty = static_cast<std::size_t>(-1);

    static bool equal(std::span<const T> a, std::span<const T> b) {
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[k] != b[k]) return false;
        }
        return true;
    }

    void insert(std::size_t i) {
        const std::size_t mask = slots_.size() - 1;
        std::size_t s = hash_coords(keys_->column(i)) & mask;
        while (slots_[s] != kEmpty) s = (s + 1) & mask;
        slots_[s] = i;
    }

    const ColumnMatrix<T>* keys_;
    std::vector<std::size_t> slots_;
};

}  // namespace onion::detail
