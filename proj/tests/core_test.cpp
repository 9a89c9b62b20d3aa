#include <doctest.h>

#include <random>

#include "onion/core.hpp"
#include "oracles.hpp"

using namespace onion;
using onion::testing::pt;

TEST_CASE("norm_sq") {
    CHECK(norm_sq(Point::origin(5)) == 0);
    CHECK(norm_sq(pt({1, 3})) == 10);
    CHECK(norm_sq(pt({3, 3})) == 18);
    CHECK(norm_sq(pt({-2, 0, 1})) == 5);

    // Exact beyond machine words.
    Scalar big("123456789012345678901234567890");
    CHECK(norm_sq(Point({big, -big})) == 2 * big * big);
}

TEST_CASE("norm_sq is nonnegative and vanishes only at the origin") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Scalar> v(1 + trial % 4);
        bool zero = true;
        for (auto& x : v) {
            x = c(rng);
            zero = zero && x == 0;
        }
        const Scalar r = norm_sq(Point(v));
        CHECK(r >= 0);
        CHECK((r == 0) == zero);
    }
}

TEST_CASE("point basics") {
    CHECK_THROWS_AS(Point(std::vector<Scalar>{}), DomainError);
    CHECK(pt({1, 2}) == pt({1, 2}));
    CHECK(pt({1, 2}) != pt({2, 1}));
    CHECK(pt({1, 2}) < pt({1, 3}));
    CHECK(pt({-1, 5}) < pt({0, -5}));
    CHECK(pt({-3, 0, 2}).to_string() == "(-3,0,2)");
}

TEST_CASE("point set dedupes, sorts and checks dimension") {
    PointSet s(2, {pt({1, 1}), pt({0, 0}), pt({1, 1}), pt({-1, 2})});
    REQUIRE(s.size() == 3);
    CHECK(s[0] == pt({-1, 2}));
    CHECK(s[1] == pt({0, 0}));
    CHECK(s[2] == pt({1, 1}));
    CHECK(s.contains(pt({0, 0})));
    CHECK_FALSE(s.contains(pt({0, 1})));
    CHECK(s.index_of(pt({1, 1})) == 2u);
    CHECK_THROWS_AS(PointSet(2, {pt({1, 1, 1})}), DomainError);
    CHECK_THROWS_AS(PointSet(0, {}), DomainError);
}

TEST_CASE("materialize") {
    auto line = materialize(Grid{1, 1});
    REQUIRE(line.size() == 3);
    CHECK(line[0] == pt({-1}));
    CHECK(line[1] == pt({0}));
    CHECK(line[2] == pt({1}));

    auto square = materialize(Grid{2, 1});
    CHECK(square.size() == 9);
    for (const Point& p : square) {
        for (const Scalar& x : p.coords()) CHECK(abs(x) <= 1);
    }
    CHECK(materialize(Grid{3, 3}).size() == 343);
    CHECK(materialize(Grid{4, 0}).size() == 1);

    for (std::size_t d = 1; d <= 4; ++d) {
        for (std::uint64_t n = 0; n <= 3; ++n) {
            Grid g{d, n};
            CHECK(Scalar(materialize(g).size()) == g.point_count());
        }
    }
}

TEST_CASE("materialize enforces the point cap") {
    try {
        materialize(Grid{3, 10}, 1000);
        FAIL("expected a size-limit error");
    } catch (const SizeLimitError& e) {
        CHECK(e.count() == 9261);
        CHECK(std::string(e.what()).find("9261") != std::string::npos);
    }
    CHECK(materialize(Grid{3, 10}, 9261).size() == 9261);
}

TEST_CASE("translate_convention") {
    CHECK(translate_convention(pt({1, 1}), 3) == pt({-3, -3}));
    CHECK(translate_convention(pt({4, 4}), 3) == pt({0, 0}));
    CHECK(translate_convention(pt({7, 4}), 3) == pt({3, 0}));
    CHECK_THROWS_AS(translate_convention(pt({0, 4}), 3), DomainError);
    CHECK_THROWS_AS(translate_convention(pt({8, 4}), 3), DomainError);
    CHECK_THROWS_AS(untranslate_convention(pt({4, 0}), 3), DomainError);

    // Bijection between [1,2n+1]^d and [-n,n]^d.
    auto box = materialize_box(2, Scalar(1), Scalar(7));
    std::vector<Point> image;
    for (const Point& p : box) {
        Point q = translate_convention(p, 3);
        CHECK(untranslate_convention(q, 3) == p);
        image.push_back(q);
    }
    CHECK(PointSet(2, image) == materialize(Grid{2, 3}));
}

TEST_CASE("detect_grid") {
    CHECK(detect_grid(materialize(Grid{3, 2})) == Grid{3, 2});
    CHECK(detect_grid(materialize(Grid{1, 0})) == Grid{1, 0});
    CHECK_FALSE(detect_grid(materialize_box(2, Scalar(1), Scalar(3))).has_value());
    CHECK_FALSE(detect_grid(PointSet(2, {pt({-1, -1}), pt({1, 1})})).has_value());
    auto holes = materialize(Grid{2, 2}).points();
    holes.erase(holes.begin() + 3);
    CHECK_FALSE(detect_grid(PointSet(2, holes)).has_value());
}
