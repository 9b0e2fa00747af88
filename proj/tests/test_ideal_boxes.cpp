#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include <bergbox/boxes.hpp>
#include <bergbox/ideal.hpp>

#include "test_util.hpp"

using namespace bergbox;

namespace {

MonomialIdeal random_ideal(testutil::Rng& rng, std::size_t max_m = 4, std::size_t max_gens = 4,
                           int max_exp = 5) {
    const std::size_t m = static_cast<std::size_t>(rng.integer(1, static_cast<long>(max_m)));
    const std::size_t l = static_cast<std::size_t>(rng.integer(1, static_cast<long>(max_gens)));
    std::set<std::vector<int>> gens;
    int guard = 0;
    while (gens.size() < l && guard++ < 200) {
        std::vector<int> g(m);
        for (auto& v : g) v = static_cast<int>(rng.integer(0, max_exp));
        gens.insert(g);
    }
    std::vector<MultiIndex> out;
    for (const auto& g : gens) out.emplace_back(g);
    return MonomialIdeal(m, std::move(out));
}

std::set<std::vector<int>> cover_union_on_grid(const std::vector<BoxSpec>& cover, std::size_t m,
                                               int N) {
    std::set<std::vector<int>> pts;
    for_each_in_grid(m, N, [&](const std::vector<int>& e) {
        MultiIndex n(e);
        for (const auto& box : cover)
            if (box.contains(n)) {
                pts.insert(e);
                break;
            }
    });
    return pts;
}

std::set<std::vector<int>> as_set(const std::vector<MultiIndex>& pts) {
    std::set<std::vector<int>> out;
    for (const auto& n : pts) out.insert(n.entries());
    return out;
}

} // namespace

TEST_CASE("ideal membership is coordinatewise divisibility") {
    MonomialIdeal I(2, {MultiIndex{1, 1}});
    CHECK(ideal_contains(I, MultiIndex{2, 3}));
    CHECK_FALSE(ideal_contains(I, MultiIndex{0, 5}));
    CHECK_FALSE(ideal_contains(MonomialIdeal::zero(2), MultiIndex{9, 9}));
    CHECK_THROWS_AS(ideal_contains(I, MultiIndex{1}), DimensionError);
    CHECK_THROWS_AS(MonomialIdeal(2, {MultiIndex{1, 1}, MultiIndex{1, 1}}), ConfigError);
}

TEST_CASE("ideal membership is monotone") {
    testutil::Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto I = random_ideal(rng);
        const std::size_t m = I.dimension();
        std::vector<int> a(m), b(m);
        for (std::size_t i = 0; i < m; ++i) {
            a[i] = static_cast<int>(rng.integer(0, 6));
            b[i] = a[i] + static_cast<int>(rng.integer(0, 3));
        }
        if (I.contains(MultiIndex(a))) CHECK(I.contains(MultiIndex(b)));
    }
}

TEST_CASE("staircase complement examples") {
    MonomialIdeal I(2, {MultiIndex{1, 1}});
    const auto pts = staircase_complement(I, 2);
    CHECK(pts.size() == 5);  // the two axes inside [0,2]^2
    for (const auto& n : pts) CHECK((n[0] == 0 || n[1] == 0));

    CHECK(staircase_complement(MonomialIdeal::zero(2), 1).size() == 4);

    MonomialIdeal unit(2, {MultiIndex{0, 0}});
    CHECK(staircase_complement(unit, 3).empty());
}

TEST_CASE("box_from_tuple bounds and emptiness") {
    MonomialIdeal I(2, {MultiIndex{2, 0}, MultiIndex{1, 1}});  // z1^2, z1 z2

    auto b1 = box_from_tuple(I, {0, 1});
    REQUIRE_FALSE(b1.is_empty());
    CHECK(b1.bounds() == std::vector<std::pair<std::size_t, int>>{{0, 1}, {1, 0}});

    auto b2 = box_from_tuple(I, {1, 0});  // first generator has exponent 0 on coord 1
    CHECK(b2.is_empty());

    MonomialIdeal J(2, {MultiIndex{1, 1}});
    auto b3 = box_from_tuple(J, {0});
    CHECK(b3.bounds() == std::vector<std::pair<std::size_t, int>>{{0, 0}});

    CHECK_THROWS_AS(box_from_tuple(J, {0, 1}), PreconditionError);
}

TEST_CASE("box membership and intersection") {
    auto box = BoxSpec::from_bounds(2, {{0, 0}});
    CHECK(box.contains(MultiIndex{0, 7}));
    CHECK_FALSE(box.contains(MultiIndex{1, 0}));
    CHECK_FALSE(BoxSpec::empty_box(2).contains(MultiIndex{0, 0}));

    auto isect = box_intersect({BoxSpec::from_bounds(2, {{0, 0}}), BoxSpec::from_bounds(2, {{1, 0}})});
    CHECK(isect.bounds() == std::vector<std::pair<std::size_t, int>>{{0, 0}, {1, 0}});

    auto min_bound = box_intersect({BoxSpec::from_bounds(2, {{0, 3}}), BoxSpec::from_bounds(2, {{0, 1}})});
    CHECK(min_bound.bounds() == std::vector<std::pair<std::size_t, int>>{{0, 1}});

    CHECK(box_intersect({box, BoxSpec::empty_box(2)}).is_empty());
    CHECK_THROWS_AS(box_intersect({}), PreconditionError);

    CHECK(box_subset(isect, box));
    CHECK_FALSE(box_subset(box, isect));
}

TEST_CASE("box cover examples") {
    MonomialIdeal I(2, {MultiIndex{1, 1}});
    const auto cover = box_cover(I);
    REQUIRE(cover.size() == 2);
    CHECK(cover[0].bounds() == std::vector<std::pair<std::size_t, int>>{{0, 0}});
    CHECK(cover[1].bounds() == std::vector<std::pair<std::size_t, int>>{{1, 0}});

    MonomialIdeal I2(2, {MultiIndex{2, 0}, MultiIndex{1, 1}});
    const auto cover2 = box_cover(I2);
    REQUIRE(cover2.size() == 2);
    CHECK(cover2[0].bounds() == std::vector<std::pair<std::size_t, int>>{{0, 0}});
    CHECK(cover2[1].bounds() == std::vector<std::pair<std::size_t, int>>{{0, 1}, {1, 0}});

    // one variable: C(z1) = {0}, covered by the single box {n1 <= 0}
    MonomialIdeal I3(1, {MultiIndex{1}});
    const auto cover3 = box_cover(I3);
    REQUIRE(cover3.size() == 1);
    CHECK(cover3[0].bounds() == std::vector<std::pair<std::size_t, int>>{{0, 0}});

    // unit ideal: every tuple hits exponent 0, cover is empty like C(I)
    MonomialIdeal unit(2, {MultiIndex{0, 0}});
    CHECK(box_cover(unit).empty());

    CHECK_THROWS_AS(box_cover(MonomialIdeal::zero(2)), PreconditionError);
}

TEST_CASE("cover equals the staircase complement on grids") {
    testutil::Rng rng(2025);
    for (int trial = 0; trial < 40; ++trial) {
        const auto I = random_ideal(rng);
        const int N = 8;
        const auto expected = as_set(staircase_complement(I, N));
        const auto minimized = cover_union_on_grid(box_cover(I, true), I.dimension(), N);
        const auto raw = cover_union_on_grid(box_cover(I, false), I.dimension(), N);
        REQUIRE(minimized == expected);
        REQUIRE(raw == expected);
    }
}

TEST_CASE("minimized covers never contain dominated boxes") {
    testutil::Rng rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        const auto I = random_ideal(rng);
        const auto cover = box_cover(I, true);
        for (std::size_t i = 0; i < cover.size(); ++i) {
            CHECK_FALSE(cover[i].is_empty());
            for (const auto& [c, b] : cover[i].bounds()) CHECK(b >= 0);
            for (std::size_t j = 0; j < cover.size(); ++j)
                if (i != j) CHECK_FALSE(box_subset(cover[i], cover[j]));
        }
    }
}
