// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Heavy by design (a few minutes on one core); every check is exact.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "onion/certify.hpp"
#include "onion/hull.hpp"
#include "onion/io.hpp"
#include "onion/peel.hpp"
#include "onion/symmetry.hpp"
#include "oracles.hpp"

using namespace onion;

namespace {

constexpr std::uint64_t kSweepLimit = 10'000;
constexpr std::uint64_t kPlanarMaxSide = 401;

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;  // keep the first failure
        ok = false;
    }
};

PeelOptions with_engine(Engine e) {
    PeelOptions o;
    o.engine = e;
    return o;
}

std::string grid_name(const Grid& g) {
    return "[-" + std::to_string(g.radius) + "," + std::to_string(g.radius) + "]^" + std::to_string(g.dimension);
}

/// Every centered grid with at most kSweepLimit points for d <= 4, then the
/// remaining odd planar sides up to kPlanarMaxSide.
std::vector<Grid> sweep_grids() {
    std::vector<Grid> grids;
    for (std::size_t d = 1; d <= 4; ++d) {
        for (std::uint64_t n = 0; Grid{d, n}.point_count() <= kSweepLimit; ++n) grids.push_back(Grid{d, n});
    }
    for (std::uint64_t n = 0; 2 * n + 1 <= kPlanarMaxSide; ++n) {
        if (Grid{2, n}.point_count() > kSweepLimit) grids.push_back(Grid{2, n});
    }
    return grids;
}

Outcome forced_equality() {
    Outcome r;
    std::ostringstream seen;
    for (std::size_t d = 1; d <= 5; ++d) {
        const auto layers = peel(materialize(Grid{d, 1})).num_layers();
        seen << (d > 1 ? " " : "") << layers;
        if (layers != d + 1) r.fail("d=" + std::to_string(d) + " gave " + std::to_string(layers));
    }
    if (r.ok) r.detail = "L = " + seen.str() + " for d = 1..5";
    return r;
}

/// Criteria 2, 4 and 6 share one sweep so each grid is peeled once per engine.
struct SweepResults {
    Outcome sandwich, certificates, engines;
};

SweepResults sweep() {
    SweepResults r;
    std::size_t grids = 0, engine_grids = 0;
    for (const Grid& g : sweep_grids()) {
        ++grids;
        const PointSet s = materialize(g);
        const bool small = g.point_count() <= kSweepLimit;

        LayerAssignment a = g.dimension == 2 ? peel_2d(s) : peel_orbits(g);
        if (small) {
            ++engine_grids;
            LayerAssignment generic = peel(s, with_engine(Engine::generic));
            if (!(generic == a)) r.engines.fail(grid_name(g) + ": generic differs");
            if (!(peel_orbits(g) == generic)) r.engines.fail(grid_name(g) + ": orbit differs");
            if (g.dimension == 2 && !(peel_2d(s) == generic)) r.engines.fail(grid_name(g) + ": planar differs");
        }

        const Scalar layers = a.num_layers();
        if (layers < lower_bound(g.dimension, g.radius) || layers > upper_bound(g.dimension, g.radius)) {
            r.sandwich.fail(grid_name(g) + ": L = " + layers.str());
        }

        try {
            const ChainCertificate chain = build_chain_certificate(g, a);
            const NormDescentCertificate norm = build_norm_certificate(g, a);
            // Check what a reader of the files would see.
            const auto chain_back = parse_chain_certificate(to_text(chain));
            const auto norm_back = parse_norm_certificate(to_text(norm));
            for (const Verdict& v : {verify(chain_back), verify(norm_back)}) {
                if (!v) r.certificates.fail(grid_name(g) + ": " + v.reason);
            }
            if (Scalar(chain.chain.size()) != lower_bound(g.dimension, g.radius)) {
                r.certificates.fail(grid_name(g) + ": chain length " + std::to_string(chain.chain.size()));
            }
            for (std::size_t i = 1; i < chain.layer_indices.size(); ++i) {
                if (chain.layer_indices[i] >= chain.layer_indices[i - 1]) {
                    r.certificates.fail(grid_name(g) + ": chain layers not strictly decreasing");
                }
            }
        } catch (const std::exception& e) {
            r.certificates.fail(grid_name(g) + ": " + e.what());
        }
    }
    if (r.sandwich.ok) r.sandwich.detail = std::to_string(grids) + " grids within dn+1 <= L <= dn^2+1";
    if (r.certificates.ok) r.certificates.detail = std::to_string(grids) + " grids, both certificates verified";
    if (r.engines.ok) r.engines.detail = std::to_string(engine_grids) + " grids, all engines identical";
    return r;
}

std::vector<Point> orbit_union(std::initializer_list<std::initializer_list<long long>> reps) {
    std::vector<Point> out;
    for (auto r : reps) {
        auto o = expand_orbit(Point(r));
        out.insert(out.end(), o.begin(), o.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

Outcome layer_regression() {
    Outcome r;
    const LayerAssignment a = peel(materialize(Grid{2, 3}));
    const auto layers = a.layers();
    const auto radii = layer_max_norm_sq(a);
    if (layers.size() < 5) {
        r.fail("only " + std::to_string(layers.size()) + " layers");
        return r;
    }
    if (layers[2] != orbit_union({{1, 3}})) r.fail("layer 3 is not the orbit of (1,3)");
    if (layers[3] != orbit_union({{0, 3}, {2, 2}})) r.fail("layer 4 is not the orbits of (0,3), (2,2)");
    if (layers[4] != orbit_union({{1, 2}})) r.fail("layer 5 is not the orbit of (1,2)");
    if (radii[2] != 10 || radii[3] != 9 || radii[4] != 5) r.fail("layer radii differ from 10, 9, 5");
    if (r.ok) r.detail = "layers 3-5 match, radii^2 10, 9, 5";
    return r;
}

Outcome oracle_equivalence() {
    Outcome r;
    std::mt19937_64 rng(20240601);
    std::size_t queries = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t d = 1 + trial % 4;
        const PointSet s = testing::random_set(rng, d, 1 + rng() % 30, 4);
        const ExtremenessQuery q(s[rng() % s.size()], s);
        const auto lp = is_extreme(q);
        ++queries;
        if (lp.extreme != brute_force_is_extreme(q)) r.fail("disagreement at " + q.subject().to_string());
        if (!lp.extreme && !lp.witness->verifies(q.subject())) r.fail("bad witness at " + q.subject().to_string());
    }
    const LayerAssignment cube = peel(materialize(Grid{3, 1}));
    for (std::uint32_t i = 1; i <= cube.num_layers(); ++i) {
        const PointSet rest = cube.remaining_at(i);
        for (const Point& p : rest) {
            const ExtremenessQuery q(p, rest);
            ++queries;
            if (is_extreme(q).extreme != brute_force_is_extreme(q)) r.fail("[-1,1]^3 step " + std::to_string(i));
        }
    }
    if (r.ok) r.detail = std::to_string(queries) + " queries agree";
    return r;
}

Outcome prec_ordering() {
    Outcome r;
    std::size_t pairs = 0;
    for (const Grid& g : {Grid{2, 3}, Grid{3, 1}}) {
        const LayerAssignment a = peel(materialize(g));
        for (const Point& x : a.source()) {
            for (const Point& y : a.source()) {
                if (!prec(x, y)) continue;
                ++pairs;
                if (a.layer_of(x) <= a.layer_of(y)) r.fail(x.to_string() + " vs " + y.to_string());
            }
        }
    }
    if (r.ok) r.detail = std::to_string(pairs) + " ordered pairs";
    return r;
}

Outcome growth_exponent() {
    Outcome r;
    const std::vector<std::uint64_t> sides{51, 101, 201, 401};
    std::vector<std::uint64_t> layers;
    for (std::uint64_t side : sides) layers.push_back(peel_2d(materialize(Grid{2, (side - 1) / 2})).num_layers());
    const double slope = io::fit_log_log(sides, layers).slope;
    char buf[96];
    std::snprintf(buf, sizeof buf, "slope %.4f (layers %llu %llu %llu %llu)", slope,
                  static_cast<unsigned long long>(layers[0]), static_cast<unsigned long long>(layers[1]),
                  static_cast<unsigned long long>(layers[2]), static_cast<unsigned long long>(layers[3]));
    r.detail = buf;
    if (slope < 1.18 || slope > 1.48) r.ok = false;
    return r;
}

Outcome equivariance() {
    Outcome r;
    std::size_t checks = 0;
    for (const Grid& g : {Grid{2, 3}, Grid{4, 1}}) {
        const LayerAssignment a = peel(materialize(g), with_engine(Engine::generic));
        for (const SignedPermutation& elem : hyperoctahedral_group(g.dimension)) {
            for (const Point& x : a.source()) {
                ++checks;
                if (a.layer_of(elem.apply(x)) != a.layer_of(x)) r.fail(grid_name(g) + " at " + x.to_string());
            }
        }
    }
    if (r.ok) r.detail = std::to_string(checks) + " (g, x) pairs";
    return r;
}

void report(int id, const std::string& name, const std::function<Outcome()>& run, bool& all_ok) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = run();
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d [PRIMARY] %-22s %s  %s (%.1fs)\n", id, name.c_str(), o.ok ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
    all_ok = all_ok && o.ok;
}

}  // namespace

int main() {
    bool all_ok = true;
    report(1, "forced-equality", forced_equality, all_ok);

    SweepResults swept;
    bool swept_ran = false;
    auto from_sweep = [&](Outcome SweepResults::*field) {
        return [&, field] {
            if (!swept_ran) {
                swept = sweep();
                swept_ran = true;
            }
            return swept.*field;
        };
    };
    report(2, "sandwich-bounds", from_sweep(&SweepResults::sandwich), all_ok);
    report(3, "layer-regression", layer_regression, all_ok);
    report(4, "certificate-soundness", from_sweep(&SweepResults::certificates), all_ok);
    report(5, "oracle-equivalence", oracle_equivalence, all_ok);
    report(6, "engine-equivalence", from_sweep(&SweepResults::engines), all_ok);
    report(7, "prec-ordering", prec_ordering, all_ok);
    report(8, "growth-exponent", growth_exponent, all_ok);
    report(9, "equivariance", equivariance, all_ok);
    std::printf("%s\n", all_ok ? "all criteria PASS" : "some criteria FAIL");
    return all_ok ? 0 : 1;
}
