#include "onion/symmetry.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "lattice.hpp"
#include "peel_engine.hpp"

namespace onion {

SignedPermutation SignedPermutation::identity(std::size_t d) {
    SignedPermutation g;
    g.permutation.resize(d);
    std::iota(g.permutation.begin(), g.permutation.end(), std::size_t{0});
    g.signs.assign(d, 1);
    return g;
}

Point SignedPermutation::apply(const Point& x) const {
    if (x.dimension() != permutation.size()) throw DomainError("group element and point differ in dimension");
    std::vector<Scalar> out(x.dimension());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = x[permutation[i]];
        if (signs[i] < 0) out[i] = -out[i];
    }
    return Point(std::move(out));
}

std::vector<SignedPermutation> hyperoctahedral_group(std::size_t d) {
    if (d == 0) throw DomainError("dimension must be at least 1");
    if (d > 7) throw SizeLimitError("hyperoctahedral group enumeration limited to d <= 7", Scalar(d));
    std::vector<SignedPermutation> out;
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
        for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
            SignedPermutation g{perm, std::vector<int>(d, 1)};
            for (std::size_t k = 0; k < d; ++k) {
                if (mask >> k & 1) g.signs[k] = -1;
            }
            out.push_back(std::move(g));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

Point canonicalize(const Point& p) {
    std::vector<Scalar> c(p.coords().begin(), p.coords().end());
    for (Scalar& x : c) x = abs(x);
    std::sort(c.begin(), c.end(), std::greater<>());
    return Point(std::move(c));
}

Orbit orbit_of(const Point& p) {
    Point rep = canonicalize(p);
    const std::size_t d = rep.dimension();
    Scalar size = 1;
    for (std::size_t k = 2; k <= d; ++k) size *= k;
    std::size_t run = 1;
    for (std::size_t k = 0; k < d; ++k) {
        if (rep[k].sign() != 0) size *= 2;
        if (k + 1 < d && rep[k + 1] == rep[k]) {
            ++run;
        } else {
            for (std::size_t f = 2; f <= run; ++f) size /= f;
            run = 1;
        }
    }
    return Orbit{std::move(rep), std::move(size)};
}

namespace {

/// Calls `emit` for each distinct image of the canonical `rep`; the first is `rep` itself.
template <class T, class Emit>
void for_each_image(std::span<const T> rep, Emit&& emit) {
    const std::size_t d = rep.size();
    std::vector<T> perm(rep.begin(), rep.end());  // nonincreasing: first in descending order
    std::vector<T> img(d);
    std::vector<std::size_t> nonzero;
    do {
        nonzero.clear();
        for (std::size_t k = 0; k < d; ++k) {
            if (detail::sign_of(perm[k]) != 0) nonzero.push_back(k);
        }
        for (std::size_t mask = 0; mask < (std::size_t{1} << nonzero.size()); ++mask) {
            img = perm;
            for (std::size_t b = 0; b < nonzero.size(); ++b) {
                if (mask >> b & 1) img[nonzero[b]] = -img[nonzero[b]];
            }
            emit(std::span<const T>(img));
        }
    } while (std::prev_permutation(perm.begin(), perm.end()));
}

}  // namespace

std::vector<Point> expand_orbit(const Point& p) {
    const Point rep = canonicalize(p);
    std::vector<Point> out;
    for_each_image<Scalar>(rep.coords(), [&](std::span<const Scalar> x) {
        out.emplace_back(std::vector<Scalar>(x.begin(), x.end()));
    });
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {
namespace {

template <class T>
class OrbitUniverse final : public Universe<T> {
public:
    OrbitUniverse(std::size_t d, std::uint64_t n) : n_(static_cast<std::int64_t>(n)), reps_{d, {}}, index_(init()) {}

    std::size_t dimension() const override { return reps_.dim; }
    std::size_t unit_count() const override { return reps_.size(); }
    std::span<const T> probe(std::size_t u) const override { return reps_.column(u); }

    std::optional<std::size_t> unit_of(std::span<const T> x) const override {
        std::vector<T> c(x.begin(), x.end());
        for (T& v : c) {
            if (v < 0) v = -v;
            if (v > n_) return std::nullopt;
        }
        std::sort(c.begin(), c.end(), std::greater<>());
        return index_.find(c);
    }

    void expand(std::size_t u, std::vector<T>& out) const override {
        for_each_image<T>(reps_.column(u), [&](std::span<const T> x) { out.insert(out.end(), x.begin(), x.end()); });
    }

private:
    // Nonincreasing tuples over [0, n], in lexicographic order.
    const ColumnMatrix<T>& init() {
        const std::size_t d = reps_.dim;
        std::vector<T> cur(d, T(0));
        std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t k, std::int64_t bound) {
            if (k == d) {
                reps_.data.insert(reps_.data.end(), cur.begin(), cur.end());
                return;
            }
            for (std::int64_t v = 0; v <= bound; ++v) {
                cur[k] = T(v);
                rec(k + 1, v);
            }
        };
        rec(0, n_);
        return reps_;
    }

    std::int64_t n_;
    ColumnMatrix<T> reps_;
    CoordIndex<T> index_;
};

template <class T>
std::vector<std::uint32_t> peel_reps(const Grid& g, const PeelOptions& options,
                                     std::vector<Point>& reps_out) {
    OrbitUniverse<T> universe(g.dimension, g.radius);
    EngineOptions eo;
    eo.reuse_witnesses = options.reuse_witnesses;
    eo.shortcuts = options.reuse_witnesses;
    eo.threads = options.threads;
    PeelEngine<T> engine(universe, eo);
    auto layers = engine.run();
    for (std::size_t u = 0; u < universe.unit_count(); ++u) reps_out.push_back(to_point<T>(universe.probe(u)));
    return layers;
}

}  // namespace
}  // namespace detail

LayerAssignment peel_orbits(const Grid& g, const PeelOptions& options, std::uint64_t cap) {
    if (g.dimension == 0) throw DomainError("grid dimension must be at least 1");
    PointSet points = materialize(g, cap);
    if (g.radius > static_cast<std::uint64_t>(detail::kMachineBound)) {
        throw SizeLimitError("orbit engine radius limit exceeded", Scalar(g.radius));
    }
    std::vector<Point> reps;
    auto rep_layers = detail::peel_reps<std::int64_t>(g, options, reps);

    std::vector<std::uint32_t> layers(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Point c = canonicalize(points[i]);
        auto it = std::lower_bound(reps.begin(), reps.end(), c);
        if (it == reps.end() || !(*it == c)) throw InternalInconsistency("orbit representative missing");
        layers[i] = rep_layers[static_cast<std::size_t>(it - reps.begin())];
    }
    return LayerAssignment(std::move(points), std::move(layers));
}

LayerAssignment peel_orbits(const PointSet& s, const PeelOptions& options) {
    auto g = detect_grid(s);
    if (!g) throw DomainError("orbit engine needs a centered grid [-n,n]^d; symmetry is not guaranteed otherwise");
    return peel_orbits(*g, options, std::max<std::uint64_t>(kDefaultPointCap, s.size()));
}

}  // namespace onion
