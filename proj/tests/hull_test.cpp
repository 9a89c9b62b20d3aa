#include <doctest.h>

#include <algorithm>
#include <random>

#include "onion/hull.hpp"
#include "oracles.hpp"

using namespace onion;
using onion::testing::pt;
using onion::testing::random_set;

namespace {

PointSet grid_without(const Grid& g, std::initializer_list<std::initializer_list<long long>> reps) {
    std::vector<Point> keep;
    for (const Point& p : materialize(g)) {
        std::vector<Scalar> a;
        for (const Scalar& x : p.coords()) a.push_back(abs(x));
        std::sort(a.begin(), a.end(), std::greater<>());
        bool drop = false;
        for (auto r : reps) drop = drop || Point(a) == Point(r);
        if (!drop) keep.push_back(p);
    }
    return PointSet(g.dimension, keep);
}

void check_result(const ExtremenessQuery& q, const ExtremenessResult& r) {
    if (r.extreme) {
        CHECK_FALSE(r.witness.has_value());
        const auto& w = r.separator;
        if (q.ambient().size() == 1) return;
        REQUIRE(w.size() == q.subject().dimension() + 1);
        auto value = [&](const Point& p) {
            Scalar v = w[0];
            for (std::size_t k = 0; k < p.dimension(); ++k) v += w[k + 1] * p[k];
            return v;
        };
        CHECK(value(q.subject()) > 0);
        for (const Point& s : q.ambient()) {
            if (!(s == q.subject())) CHECK(value(s) <= 0);
        }
    } else {
        REQUIRE(r.witness.has_value());
        CHECK(r.witness->verifies(q.subject()));
        CHECK(r.witness->support.size() <= q.subject().dimension() + 1);
        for (const auto& t : r.witness->support) CHECK(q.ambient().contains(t.point));
    }
}

}  // namespace

TEST_CASE("query validation") {
    PointSet s(2, {pt({0, 0}), pt({1, 0})});
    CHECK_THROWS_AS(ExtremenessQuery(pt({0, 0, 0}), s), DomainError);
    CHECK_THROWS_AS(ExtremenessQuery(pt({5, 5}), s), DomainError);
}

TEST_CASE("singleton ambient is extreme") {
    PointSet s(3, {pt({4, -1, 2})});
    ExtremenessQuery q(pt({4, -1, 2}), s);
    CHECK(is_extreme(q).extreme);
    CHECK(brute_force_is_extreme(q));
}

TEST_CASE("[-3,3]^2 step 3: (1,3) is a vertex once two layers are gone") {
    PointSet c3 = grid_without(Grid{2, 3}, {{3, 3}, {3, 2}});
    REQUIRE(c3.size() == 49 - 12);
    ExtremenessQuery q(pt({1, 3}), c3);
    auto r = is_extreme(q);
    CHECK(r.extreme);
    CHECK(brute_force_is_extreme(q));
    check_result(q, r);
    // (2,2) sits on the segment between (1,3) and (3,1).
    CHECK_FALSE(is_extreme(ExtremenessQuery(pt({2, 2}), c3)).extreme);
}

TEST_CASE("cube face center: midpoint of an edge pair, until the edges go") {
    PointSet no_corners = grid_without(Grid{3, 1}, {{1, 1, 1}});
    REQUIRE(no_corners.size() == 19);
    ExtremenessQuery q(pt({1, 0, 0}), no_corners);
    auto r = is_extreme(q);
    CHECK_FALSE(r.extreme);
    check_result(q, r);
    CHECK_FALSE(brute_force_is_extreme(q));
    ConvexCombinationWitness midpoint{{{pt({1, 1, 0}), Rational(1, 2)}, {pt({1, -1, 0}), Rational(1, 2)}}};
    CHECK(midpoint.verifies(pt({1, 0, 0})));

    PointSet faces = grid_without(Grid{3, 1}, {{1, 1, 1}, {1, 1, 0}});
    REQUIRE(faces.size() == 7);
    ExtremenessQuery q2(pt({1, 0, 0}), faces);
    CHECK(is_extreme(q2).extreme);
    CHECK(brute_force_is_extreme(q2));
}

TEST_CASE("origin inside a triangle needs three support points") {
    PointSet s(2, {pt({0, 0}), pt({0, 1}), pt({1, 0}), pt({-1, -1})});
    ExtremenessQuery q(pt({0, 0}), s);
    auto r = is_extreme(q);
    REQUIRE_FALSE(r.extreme);
    CHECK(r.witness->support.size() == 3);
    for (const auto& t : r.witness->support) CHECK(t.coefficient == Rational(1, 3));
    CHECK_FALSE(brute_force_is_extreme(q));
}

TEST_CASE("brute-force oracle examples") {
    PointSet row(2, {pt({0, 2}), pt({-1, 2}), pt({1, 2})});
    CHECK_FALSE(brute_force_is_extreme(ExtremenessQuery(pt({0, 2}), row)));
    CHECK(brute_force_is_extreme(ExtremenessQuery(pt({1, 2}), row)));

    PointSet g2 = materialize(Grid{2, 2});
    CHECK(brute_force_is_extreme(ExtremenessQuery(pt({2, 2}), g2)));
    CHECK_FALSE(brute_force_is_extreme(ExtremenessQuery(pt({2, 1}), g2)));

    PointSet big = materialize(Grid{2, 4});
    CHECK_THROWS_AS(brute_force_is_extreme(ExtremenessQuery(pt({0, 0}), big)), SizeLimitError);
    CHECK(brute_force_is_extreme(ExtremenessQuery(pt({4, 4}), big), 100));
}

TEST_CASE("extreme_points examples") {
    CHECK(extreme_points(materialize(Grid{2, 1})) == PointSet(2, {pt({-1, -1}), pt({-1, 1}), pt({1, -1}), pt({1, 1})}));
    CHECK(extreme_points(materialize(Grid{2, 3})) == PointSet(2, {pt({-3, -3}), pt({-3, 3}), pt({3, -3}), pt({3, 3})}));
    CHECK(extreme_points(PointSet(2, {pt({5, 7})})) == PointSet(2, {pt({5, 7})}));
    CHECK(extreme_points(PointSet(1, {pt({0}), pt({3}), pt({1})})) == PointSet(1, {pt({0}), pt({3})}));
    CHECK_THROWS_AS(extreme_points(PointSet(2, {})), DomainError);
}

TEST_CASE("witness verification rejects bad witnesses") {
    Point x = pt({1, 0});
    ConvexCombinationWitness good{{{pt({2, 0}), Rational(1, 2)}, {pt({0, 0}), Rational(1, 2)}}};
    CHECK(good.verifies(x));
    ConvexCombinationWitness negative{{{pt({2, 0}), Rational(3, 2)}, {pt({4, 0}), Rational(-1, 2)}}};
    CHECK_FALSE(negative.verifies(x));
    ConvexCombinationWitness short_sum{{{pt({2, 0}), Rational(1, 2)}}};
    CHECK_FALSE(short_sum.verifies(x));
    ConvexCombinationWitness self{{{x, Rational(1)}}};
    CHECK_FALSE(self.verifies(x));
    CHECK_FALSE(ConvexCombinationWitness{}.verifies(x));
}

TEST_CASE("Caratheodory reduction") {
    // The center of a square written with all four corners.
    ConvexCombinationWitness w{{{pt({1, 1}), Rational(1, 4)},
                                {pt({-1, 1}), Rational(1, 4)},
                                {pt({1, -1}), Rational(1, 4)},
                                {pt({-1, -1}), Rational(1, 4)}}};
    auto r = caratheodory_reduce(w, pt({0, 0}));
    CHECK(r.support.size() <= 3);
    CHECK(r.verifies(pt({0, 0})));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 1 + trial % 3;
        PointSet s = random_set(rng, d, 8, 4);
        ConvexCombinationWitness big;
        std::vector<Rational> sum(d);
        std::uniform_int_distribution<int> wt(1, 5);
        int total = 0;
        std::vector<int> weights;
        for (std::size_t i = 0; i < s.size(); ++i) total += weights.emplace_back(wt(rng));
        for (std::size_t i = 0; i < s.size(); ++i) big.support.push_back({s[i], Rational(weights[i], total)});
        for (const auto& t : big.support) {
            for (std::size_t k = 0; k < d; ++k) sum[k] += t.coefficient * Rational(t.point[k]);
        }
        // Only integer targets are points; skip the rest.
        bool integral = std::all_of(sum.begin(), sum.end(), [](const Rational& v) {
            return boost::multiprecision::denominator(v) == 1;
        });
        if (!integral) continue;
        std::vector<Scalar> c;
        for (const auto& v : sum) c.push_back(boost::multiprecision::numerator(v));
        Point target(c);
        if (s.contains(target)) continue;
        auto reduced = caratheodory_reduce(big, target);
        CHECK(reduced.support.size() <= d + 1);
        CHECK(reduced.verifies(target));
    }
}

TEST_CASE("LP agrees with the brute-force oracle and its answers re-verify") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t d = 1 + trial % 4;
        const std::size_t count = 1 + rng() % 20;
        PointSet s = random_set(rng, d, count, 3);
        const Point& subject = s[rng() % s.size()];
        ExtremenessQuery q(subject, s);
        auto r = is_extreme(q);
        CHECK(r.extreme == brute_force_is_extreme(q));
        check_result(q, r);
    }
}

TEST_CASE("LP handles coordinates beyond machine words") {
    const Scalar big("1000000000000000000000");
    PointSet s(2, {Point({big, Scalar(0)}), Point({-big, Scalar(0)}), Point({Scalar(0), big}), Point({Scalar(0), Scalar(0)}),
                   Point({Scalar(1), Scalar(1)})});
    ExtremenessQuery origin(Point({Scalar(0), Scalar(0)}), s);
    auto r = is_extreme(origin);
    CHECK_FALSE(r.extreme);
    check_result(origin, r);
    ExtremenessQuery top(Point({Scalar(0), big}), s);
    CHECK(is_extreme(top).extreme);
    CHECK(brute_force_is_extreme(top));
    CHECK(extreme_points(s).size() == 3);
}

TEST_CASE("points of maximum norm are always extreme") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t d = 1 + trial % 4;
        PointSet s = random_set(rng, d, 1 + rng() % 40, 4);
        Scalar best = -1;
        for (const Point& p : s) best = std::max(best, norm_sq(p));
        PointSet ext = extreme_points(s);
        for (const Point& p : s) {
            if (norm_sq(p) == best) CHECK(ext.contains(p));
        }
    }
}

TEST_CASE("extreme_points is a subset, idempotent, and matches per-point queries") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t d = 1 + trial % 3;
        PointSet s = random_set(rng, d, 1 + rng() % 30, 3);
        PointSet e = extreme_points(s);
        CHECK_FALSE(e.empty());
        for (const Point& p : e) CHECK(s.contains(p));
        CHECK(extreme_points(e) == e);
        for (const Point& p : s) CHECK(e.contains(p) == is_extreme(ExtremenessQuery(p, s)).extreme);
    }
}
