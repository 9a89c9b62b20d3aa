#pragma once
// Layer-by-layer peeling over an abstract set of "units". A unit is either a single
// point (generic engine) or a whole symmetry orbit (orbit engine); all points of a unit
// are peeled together and a unit is classified by testing one probe point.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "lattice.hpp"
#include "membership_lp.hpp"

namespace onion::detail {

template <class T>
class Universe {
public:
    virtual ~Universe() = default;
    virtual std::size_t dimension() const = 0;
    virtual std::size_t unit_count() const = 0;
    virtual std::span<const T> probe(std::size_t u) const = 0;
    /// Unit owning point `x` of the original set, if `x` belongs to it.
    virtual std::optional<std::size_t> unit_of(std::span<const T> x) const = 0;
    /// Appends every point of unit `u`, probe first.
    virtual void expand(std::size_t u, std::vector<T>& out) const = 0;
};

struct EngineOptions {
    /// Keep witnesses across layers; re-test a unit only once its witness loses a point.
    bool reuse_witnesses = true;
    /// Cheap exact shortcuts (midpoint witnesses, centroid functional) before the LP.
    bool shortcuts = true;
    unsigned threads = 1;
};

struct EngineStats {
    std::size_t lp_calls = 0;
    std::size_t lp_pivots = 0;
    std::size_t shortcut_hits = 0;
};

/// Midpoint directions: nonzero vectors of {-1,0,1}^d up to sign (axis-only above d = 6).
std::vector<std::vector<std::int64_t>> midpoint_directions(std::size_t d);

template <class T>
class PeelEngine {
public:
    PeelEngine(const Universe<T>& universe, EngineOptions options)
        : u_(universe), opt_(options), dirs_(midpoint_directions(universe.dimension())) {}

    /// 1-based layer of every unit.
    std::vector<std::uint32_t> run() {
        const std::size_t n = u_.unit_count();
        layer_.assign(n, 0);
        witness_.assign(n, {});
        dependents_.assign(n, {});
        std::vector<std::size_t> pending(n);
        for (std::size_t i = 0; i < n; ++i) pending[i] = i;
        std::size_t alive = n;
        std::uint32_t current = 0;

        while (alive > 0) {
            ++current;
            if (!opt_.reuse_witnesses) {
                pending.clear();
                for (auto& deps : dependents_) deps.clear();
                for (std::size_t i = 0; i < n; ++i) {
                    if (layer_[i] == 0) {
                        pending.push_back(i);
                        witness_[i].clear();
                    }
                }
            }

            std::vector<std::size_t> open;
            for (std::size_t i : pending) {
                if (opt_.shortcuts && midpoint_witness(i)) {
                    ++stats_.shortcut_hits;
                    continue;
                }
                open.push_back(i);
            }
            // Every vertex of the remaining set is in `open`: all other alive units hold
            // a valid witness. So `open`, expanded, is a sufficient column set.
            std::vector<std::size_t> extreme = classify(open);
            if (extreme.empty()) throw InternalInconsistency("peeling produced an empty layer");

            std::vector<std::size_t> next;
            for (std::size_t v : extreme) {
                layer_[v] = current;
                --alive;
            }
            for (std::size_t v : extreme) {
                for (std::size_t w : dependents_[v]) {
                    if (layer_[w] != 0 || witness_[w].empty()) continue;
                    if (std::find(witness_[w].begin(), witness_[w].end(), v) == witness_[w].end()) continue;
                    witness_[w].clear();
                    next.push_back(w);
                }
                dependents_[v].clear();
                dependents_[v].shrink_to_fit();
            }
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            pending = std::move(next);
        }
        return layer_;
    }

    const EngineStats& stats() const noexcept { return stats_; }

private:
    bool alive_unit(std::span<const T> x, std::size_t& unit) const {
        auto id = u_.unit_of(x);
        if (!id || layer_[*id] != 0) return false;
        unit = *id;
        return true;
    }

    bool midpoint_witness(std::size_t i) {
        auto x = u_.probe(i);
        const std::size_t d = x.size();
        std::vector<T> plus(d), minus(d);
        for (const auto& v : dirs_) {
            for (std::size_t k = 0; k < d; ++k) {
                plus[k] = x[k] + v[k];
                minus[k] = x[k] - v[k];
            }
            std::size_t a, b;
            if (alive_unit(plus, a) && alive_unit(minus, b)) {
                set_witness(i, {a, b});
                return true;
            }
        }
        return false;
    }

    void set_witness(std::size_t i, std::vector<std::size_t> units) {
        std::sort(units.begin(), units.end());
        units.erase(std::unique(units.begin(), units.end()), units.end());
        for (std::size_t v : units) dependents_[v].push_back(i);
        witness_[i] = std::move(units);
    }

    struct Verdict {
        bool extreme = false;
        std::vector<std::size_t> support_columns;
        bool shortcut = false;
        std::size_t pivots = 0;
    };

    std::vector<std::size_t> classify(const std::vector<std::size_t>& open) {
        const std::size_t d = u_.dimension();
        ColumnMatrix<T> cols{d, {}};
        std::vector<std::size_t> column_unit;
        std::vector<std::size_t> probe_column(open.size());
        for (std::size_t k = 0; k < open.size(); ++k) {
            const std::size_t before = cols.size();
            probe_column[k] = before;
            u_.expand(open[k], cols.data);
            column_unit.resize(cols.size(), open[k]);
        }
        centroid_ = centroid_sum(cols);

        std::vector<Verdict> verdicts(open.size());
        auto work = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t k = lo; k < hi; ++k) verdicts[k] = decide(cols, probe_column[k]);
        };
        const unsigned threads = std::max(1u, std::min<unsigned>(opt_.threads, open.size() / 8 + 1));
        if (threads == 1) {
            work(0, open.size());
        } else {
            std::vector<std::jthread> pool;
            const std::size_t chunk = (open.size() + threads - 1) / threads;
            for (unsigned t = 0; t < threads; ++t) {
                const std::size_t lo = std::min(open.size(), t * chunk);
                const std::size_t hi = std::min(open.size(), lo + chunk);
                pool.emplace_back(work, lo, hi);
            }
        }

        std::vector<std::size_t> extreme;
        for (std::size_t k = 0; k < open.size(); ++k) {
            Verdict& v = verdicts[k];
            stats_.shortcut_hits += v.shortcut;
            stats_.lp_calls += !v.shortcut;
            stats_.lp_pivots += v.pivots;
            if (v.extreme) {
                extreme.push_back(open[k]);
            } else {
                std::vector<std::size_t> units;
                for (std::size_t c : v.support_columns) units.push_back(column_unit[c]);
                set_witness(open[k], std::move(units));
            }
        }
        return extreme;
    }

    std::optional<std::vector<wide_t<T>>> centroid_sum(const ColumnMatrix<T>& cols) const {
        if (!opt_.shortcuts) return std::nullopt;
        if constexpr (std::is_same_v<T, std::int64_t>) {
            if (cols.size() > (std::size_t{1} << 22)) return std::nullopt;
        }
        std::vector<wide_t<T>> sum(cols.dim, wide_t<T>(0));
        for (std::size_t j = 0; j < cols.size(); ++j) {
            auto c = cols.column(j);
            for (std::size_t k = 0; k < cols.dim; ++k) sum[k] += wide_t<T>(c[k]);
        }
        return sum;
    }

    /// With c = |K| x - sum(K): x is a vertex if c.x > c.s for every other column s.
    bool centroid_separates(const ColumnMatrix<T>& cols, std::size_t self) const {
        const std::size_t d = cols.dim;
        const auto x = cols.column(self);
        const wide_t<T> count(static_cast<std::int64_t>(cols.size()));
        std::vector<wide_t<T>> c(d);
        for (std::size_t k = 0; k < d; ++k) c[k] = count * wide_t<T>(x[k]) - (*centroid_)[k];
        // c.(x - s) > 0 for all s != x.
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (j == self) continue;
            auto s = cols.column(j);
            wide_t<T> acc(0);
            for (std::size_t k = 0; k < d; ++k) acc += c[k] * wide_t<T>(x[k] - s[k]);
            if (sign_of(acc) <= 0) return false;
        }
        return true;
    }

    Verdict decide(const ColumnMatrix<T>& cols, std::size_t self) const {
        Verdict v;
        if (centroid_ && centroid_separates(cols, self)) {
            v.extreme = true;
            v.shortcut = true;
            return v;
        }
        auto lp = solve_membership<T>(cols.column(self), cols, self);
        v.pivots = lp.pivots;
        v.extreme = !lp.feasible;
        for (auto& [j, coeff] : lp.combination) v.support_columns.push_back(j);
        return v;
    }

    const Universe<T>& u_;
    EngineOptions opt_;
    std::vector<std::vector<std::int64_t>> dirs_;
    std::vector<std::uint32_t> layer_;
    std::vector<std::vector<std::size_t>> witness_;
    std::vector<std::vector<std::size_t>> dependents_;
    std::optional<std::vector<wide_t<T>>> centroid_;
    EngineStats stats_;
};

}  // namespace onion::detail
