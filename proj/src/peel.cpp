#include "onion/peel.hpp"

#include <algorithm>

#include "lattice.hpp"
#include "onion/symmetry.hpp"
#include "peel_engine.hpp"

namespace onion {

LayerAssignment::LayerAssignment(PointSet source, std::vector<std::uint32_t> layer_of)
    : source_(std::move(source)), layer_of_(std::move(layer_of)) {
    if (layer_of_.size() != source_.size()) {
        throw DomainError("layer assignment size does not match its point set");
    }
    if (source_.empty()) throw DomainError("layer assignment of an empty set");
    num_layers_ = *std::max_element(layer_of_.begin(), layer_of_.end());
    std::vector<bool> seen(num_layers_ + 1, false);
    for (std::uint32_t l : layer_of_) {
        if (l == 0) throw DomainError("layer indices are 1-based");
        seen[l] = true;
    }
    for (std::uint32_t l = 1; l <= num_layers_; ++l) {
        if (!seen[l]) throw DomainError("layer " + std::to_string(l) + " is empty");
    }
}

std::uint32_t LayerAssignment::layer_of(const Point& p) const {
    auto i = source_.index_of(p);
    if (!i) throw DomainError("point " + p.to_string() + " is not in the peeled set");
    return layer_of_[*i];
}

std::vector<std::vector<Point>> LayerAssignment::layers() const {
    std::vector<std::vector<Point>> out(num_layers_);
    for (std::size_t i = 0; i < source_.size(); ++i) out[layer_of_[i] - 1].push_back(source_[i]);
    return out;
}

std::vector<std::size_t> LayerAssignment::layer_sizes() const {
    std::vector<std::size_t> out(num_layers_, 0);
    for (std::uint32_t l : layer_of_) ++out[l - 1];
    return out;
}

PointSet LayerAssignment::remaining_at(std::uint32_t layer) const {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < source_.size(); ++i) {
        if (layer_of_[i] >= layer) pts.push_back(source_[i]);
    }
    return PointSet(source_.dimension(), std::move(pts));
}

namespace detail {

std::vector<std::vector<std::int64_t>> midpoint_directions(std::size_t d) {
    std::vector<std::vector<std::int64_t>> out;
    if (d > 6) {
        for (std::size_t k = 0; k < d; ++k) {
            std::vector<std::int64_t> v(d, 0);
            v[k] = 1;
            out.push_back(std::move(v));
        }
        return out;
    }
    // Axis directions first; they are by far the most common witnesses on grids.
    std::vector<std::int64_t> v(d, -1);
    std::vector<std::vector<std::int64_t>> rest;
    while (true) {
        auto first = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
        if (first != v.end() && *first > 0) {
            const auto nonzero = std::count_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
            (nonzero == 1 ? out : rest).push_back(v);
        }
        std::size_t k = 0;
        while (k < d && v[k] == 1) v[k++] = -1;
        if (k == d) break;
        ++v[k];
    }
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

namespace {

template <class T>
class PointUniverse final : public Universe<T> {
public:
    explicit PointUniverse(const PointSet& s) : points_{s.dimension(), {}}, index_(init(s)) {}

    std::size_t dimension() const override { return points_.dim; }
    std::size_t unit_count() const override { return points_.size(); }
    std::span<const T> probe(std::size_t u) const override { return points_.column(u); }
    std::optional<std::size_t> unit_of(std::span<const T> x) const override { return index_.find(x); }
    void expand(std::size_t u, std::vector<T>& out) const override {
        auto c = points_.column(u);
        out.insert(out.end(), c.begin(), c.end());
    }

private:
    const ColumnMatrix<T>& init(const PointSet& s) {
        for (const Point& p : s) append_coords(p, points_.data);
        return points_;
    }

    ColumnMatrix<T> points_;
    CoordIndex<T> index_;
};

template <class T>
std::vector<std::uint32_t> peel_generic(const PointSet& s, const PeelOptions& options) {
    PointUniverse<T> universe(s);
    EngineOptions eo;
    eo.reuse_witnesses = options.reuse_witnesses;
    eo.shortcuts = options.reuse_witnesses;
    eo.threads = options.threads;
    PeelEngine<T> engine(universe, eo);
    return engine.run();
}

template <class T>
wide_t<T> cross(const std::vector<T>& xs, const std::vector<T>& ys, std::uint32_t o, std::uint32_t a,
                std::uint32_t b) {
    return wide_t<T>(xs[a] - xs[o]) * wide_t<T>(ys[b] - ys[o]) -
           wide_t<T>(ys[a] - ys[o]) * wide_t<T>(xs[b] - xs[o]);
}

template <class T>
std::vector<std::uint32_t> peel_planar(const PointSet& s) {
    const std::size_t n = s.size();
    std::vector<T> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = to_coord<T>(s[i][0]);
        ys[i] = to_coord<T>(s[i][1]);
    }
    // `s` is already in lexicographic (x, then y) order, which is what monotone chain needs.
    std::vector<std::uint32_t> layer(n, 0);
    std::vector<std::uint32_t> rest(n);
    for (std::uint32_t i = 0; i < n; ++i) rest[i] = i;
    std::vector<std::uint32_t> hull(2 * n + 1);
    std::uint32_t current = 0;

    while (!rest.empty()) {
        ++current;
        if (rest.size() <= 2) {
            for (std::uint32_t i : rest) layer[i] = current;
            break;
        }
        std::size_t k = 0;
        for (std::uint32_t i : rest) {
            while (k >= 2 && sign_of(cross(xs, ys, hull[k - 2], hull[k - 1], i)) <= 0) --k;
            hull[k++] = i;
        }
        const std::size_t lower = k + 1;
        for (std::size_t j = rest.size() - 1; j-- > 0;) {
            const std::uint32_t i = rest[j];
            while (k >= lower && sign_of(cross(xs, ys, hull[k - 2], hull[k - 1], i)) <= 0) --k;
            hull[k++] = i;
        }
        for (std::size_t j = 0; j + 1 < k; ++j) layer[hull[j]] = current;
        std::erase_if(rest, [&](std::uint32_t i) { return layer[i] != 0; });
    }
    return layer;
}

}  // namespace
}  // namespace detail

LayerAssignment peel_2d(const PointSet& s) {
    if (s.dimension() != 2) throw DomainError("peel_2d needs a planar point set");
    if (s.empty()) throw DomainError("cannot peel an empty set");
    auto layers = detail::fits_machine(s) ? detail::peel_planar<std::int64_t>(s) : detail::peel_planar<Scalar>(s);
    return LayerAssignment(s, std::move(layers));
}

LayerAssignment peel(const PointSet& s, const PeelOptions& options) {
    if (s.empty()) throw DomainError("cannot peel an empty set");
    Engine engine = options.engine;
    if (engine == Engine::automatic) engine = s.dimension() == 2 ? Engine::planar : Engine::generic;
    switch (engine) {
        case Engine::planar:
            return peel_2d(s);
        case Engine::orbit:
            return peel_orbits(s, options);
        default:
            break;
    }
    auto layers = detail::fits_machine(s) ? detail::peel_generic<std::int64_t>(s, options)
                                          : detail::peel_generic<Scalar>(s, options);
    return LayerAssignment(s, std::move(layers));
}

std::vector<Scalar> layer_max_norm_sq(const LayerAssignment& a) {
    std::vector<Scalar> out(a.num_layers(), Scalar(-1));
    const auto idx = a.indices();
    for (std::size_t i = 0; i < a.source().size(); ++i) {
        Scalar r = norm_sq(a.source()[i]);
        Scalar& slot = out[idx[i] - 1];
        if (r > slot) slot = std::move(r);
    }
    return out;
}

}  // namespace onion
