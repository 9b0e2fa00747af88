#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <vector>

#include <bergbox/rational.hpp>
#include <bergbox/resolution.hpp>

#include "test_util.hpp"

using namespace bergbox;

namespace {

MonomialIdeal zw_ideal() { return MonomialIdeal(2, {MultiIndex{1, 1}}); }

std::vector<std::vector<long long>> to_dense(const SignedIncidence& m) {
    std::vector<std::vector<long long>> dense(m.rows, std::vector<long long>(m.cols, 0));
    for (const auto& [r, c, s] : m.entries) dense[r][c] += s;
    return dense;
}

std::vector<std::vector<long long>> multiply(const std::vector<std::vector<long long>>& A,
                                             const std::vector<std::vector<long long>>& B) {
    std::vector<std::vector<long long>> Z(A.size(), std::vector<long long>(B.empty() ? 0 : B[0].size(), 0));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t k = 0; k < B.size(); ++k)
            if (A[i][k] != 0)
                for (std::size_t j = 0; j < Z[i].size(); ++j) Z[i][j] += A[i][k] * B[k][j];
    return Z;
}

} // namespace

TEST_CASE("rational arithmetic") {
    CHECK((Rational(1, 2) + Rational(1, 3)) == Rational(5, 6));
    CHECK((Rational(2, 4)) == Rational(1, 2));
    CHECK((Rational(1, 2) - Rational(1, 2)).is_zero());
    CHECK((Rational(-3, -6)) == Rational(1, 2));
    CHECK((Rational(1, -2)).den() == 2);
    CHECK_THROWS_AS(Rational(1, 0), DomainError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), DomainError);
}

TEST_CASE("rational rank") {
    CHECK(rational_rank({{1, 0}, {0, 1}}) == 2);
    CHECK(rational_rank({{1, 2}, {2, 4}}) == 1);
    CHECK(rational_rank({{0, 0}, {0, 0}}) == 0);
    CHECK(rational_rank({{1, 1, 0}, {0, 1, 1}, {1, 0, -1}}) == 2);
}

TEST_CASE("subset enumeration is lexicographic") {
    const auto s = subsets_lex(3, 2);
    REQUIRE(s.size() == 3);
    CHECK(s[0] == std::vector<std::size_t>{0, 1});
    CHECK(s[1] == std::vector<std::size_t>{0, 2});
    CHECK(s[2] == std::vector<std::size_t>{1, 2});
    CHECK(subsets_lex(4, 0).size() == 1);
    CHECK(subsets_lex(5, 3).size() == 10);
}

TEST_CASE("build_complex levels") {
    const auto cover = box_cover(zw_ideal());
    const auto c = build_complex(cover);
    CHECK(c.k == 2);
    REQUIRE(c.level(1).size() == 2);
    REQUIRE(c.level(2).size() == 1);
    CHECK(c.level(2)[0].box.bounds() ==
          std::vector<std::pair<std::size_t, int>>{{0, 0}, {1, 0}});

    const auto single = build_complex({BoxSpec::from_bounds(2, {{0, 3}})});
    CHECK(single.k == 1);
    CHECK(single.level(1).size() == 1);

    const auto triple = build_complex({BoxSpec::from_bounds(3, {{0, 0}}),
                                       BoxSpec::from_bounds(3, {{1, 0}}),
                                       BoxSpec::from_bounds(3, {{2, 0}})});
    CHECK(triple.level(1).size() == 3);
    CHECK(triple.level(2).size() == 3);
    CHECK(triple.level(3).size() == 1);
}

TEST_CASE("fiber dimensions") {
    const auto c = build_complex(box_cover(zw_ideal()));
    CHECK(fiber_dimensions(c, MultiIndex{0, 0}) == std::vector<std::size_t>{1, 2, 1});
    CHECK(fiber_dimensions(c, MultiIndex{1, 1}) == std::vector<std::size_t>{1, 0, 0});
    CHECK(fiber_dimensions(c, MultiIndex{0, 3}) == std::vector<std::size_t>{1, 1, 0});
}

TEST_CASE("psi matrices on the k=2 cover") {
    const auto c = build_complex(box_cover(zw_ideal()));
    const int N = 3;
    const auto psi0 = psi_matrix(c, 0, N);
    const auto psi1 = psi_matrix(c, 1, N);

    // A0 has 16 grid points, A1 the two half-axes (4 points each), A2 one point.
    CHECK(psi0.cols == 16);
    CHECK(psi0.rows == 8);
    CHECK(psi1.cols == 8);
    CHECK(psi1.rows == 1);

    // chain condition, exactly
    const auto product = multiply(to_dense(psi1), to_dense(psi0));
    for (const auto& row : product)
        for (long long v : row) REQUIRE(v == 0);

    // the n = (0,0) fiber: Psi0 restricts to (1,1)^T, Psi1 to (-1,+1)
    const MultiIndex origin{0, 0};
    std::map<std::size_t, int> fiber0;  // summand -> sign
    for (const auto& [r, cidx, s] : psi0.entries)
        if (psi0.row_basis[r].second == origin && psi0.col_basis[cidx].second == origin)
            fiber0[psi0.row_basis[r].first] = s;
    CHECK(fiber0 == std::map<std::size_t, int>{{0, 1}, {1, 1}});

    std::map<std::size_t, int> fiber1;  // source summand -> sign
    for (const auto& [r, cidx, s] : psi1.entries)
        if (psi1.row_basis[r].second == origin && psi1.col_basis[cidx].second == origin)
            fiber1[psi1.col_basis[cidx].first] = s;
    CHECK(fiber1 == std::map<std::size_t, int>{{0, -1}, {1, 1}});

    // global truncated ranks match exactness: rank Psi0 = #complement points,
    // rank Psi0 + rank Psi1 = dim A1, rank Psi1 = dim A2.
    const auto d0 = to_dense(psi0);
    const auto d1 = to_dense(psi1);
    CHECK(rational_rank(d0) == 7);
    CHECK(rational_rank(d1) == 1);
}

TEST_CASE("psi fibers equal the canonical simplex matrices") {
    // Three boxes all containing the origin: the fiber at 0 must be the
    // canonical t=3 complex after the order-preserving relabeling.
    const auto c = build_complex({BoxSpec::from_bounds(3, {{0, 0}}),
                                  BoxSpec::from_bounds(3, {{1, 0}}),
                                  BoxSpec::from_bounds(3, {{2, 0}})});
    const MultiIndex origin{0, 0, 0};
    for (std::size_t q = 1; q <= 2; ++q) {
        const auto psi = psi_matrix(c, q, 2);
        const auto canonical = canonical_fiber_matrix(3, q);
        // extract the origin fiber in summand order
        std::map<std::pair<std::size_t, std::size_t>, long long> got;
        for (const auto& [r, cidx, s] : psi.entries)
            if (psi.row_basis[r].second == origin && psi.col_basis[cidx].second == origin)
                got[{psi.row_basis[r].first, psi.col_basis[cidx].first}] += s;
        for (std::size_t i = 0; i < canonical.size(); ++i)
            for (std::size_t j = 0; j < canonical[i].size(); ++j) {
                const auto it = got.find({i, j});
                const long long val = it == got.end() ? 0 : it->second;
                REQUIRE(val == canonical[i][j]);
            }
    }
}

TEST_CASE("canonical fiber checks pass for every small type") {
    for (std::size_t t = 1; t <= 8; ++t) {
        const auto& check = canonical_fiber_check(t);
        CHECK(check.chain_ok);
        CHECK(check.ranks_ok);
        CHECK(check.inclusion_exclusion_ok);
        REQUIRE(check.ranks.size() == t);
        CHECK(check.ranks[0] == 1);
        for (std::size_t q = 0; q < t; ++q) {
            const std::size_t next = q + 1 < t ? check.ranks[q + 1] : 0;
            CHECK(check.ranks[q] + next == binomial(t, q + 1));
        }
    }
}

TEST_CASE("verify_exactness passes on hand examples") {
    {
        const auto I = zw_ideal();
        const auto report = verify_exactness(build_complex(box_cover(I)), I, 3);
        CHECK(report.passed());
        CHECK(report.grid_points == 16);
        CHECK(report.ideal_points == 9);
        CHECK(report.complement_points == 7);
    }
    {
        MonomialIdeal I(2, {MultiIndex{2, 0}, MultiIndex{1, 1}});
        const auto report = verify_exactness(build_complex(box_cover(I)), I, 5);
        CHECK(report.passed());
    }
}

TEST_CASE("verify_exactness flags wrong covers") {
    const auto I = zw_ideal();

    // dropping a cover box leaves complement points uncovered
    auto cover = box_cover(I);
    const auto partial = verify_exactness(build_complex({cover[0]}), I, 3);
    CHECK_FALSE(partial.passed());
    CHECK(partial.failure_count > 0);
    REQUIRE_FALSE(partial.failures.empty());
    CHECK(partial.failures[0].reason == "complement point not covered");

    // an oversized box swallows ideal points
    const auto bogus =
        verify_exactness(build_complex({BoxSpec::from_bounds(2, {{0, 1}}), cover[1]}), I, 3);
    CHECK_FALSE(bogus.passed());
}

TEST_CASE("verify_exactness on random ideals") {
    testutil::Rng rng(424242);
    int tested = 0;
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t m = static_cast<std::size_t>(rng.integer(1, 4));
        const std::size_t l = static_cast<std::size_t>(rng.integer(1, 4));
        std::set<std::vector<int>> gens;
        int guard = 0;
        while (gens.size() < l && guard++ < 100) {
            std::vector<int> g(m);
            for (auto& v : g) v = static_cast<int>(rng.integer(0, 5));
            gens.insert(g);
        }
        std::vector<MultiIndex> gv;
        for (const auto& g : gens) gv.emplace_back(g);
        MonomialIdeal I(m, std::move(gv));
        const auto cover = box_cover(I);
        if (cover.empty()) {
            CHECK(staircase_complement(I, 8).empty());
            continue;
        }
        const auto report = verify_exactness(build_complex(cover), I, 8);
        REQUIRE(report.passed());
        ++tested;
    }
    CHECK(tested > 10);
}

TEST_CASE("index certificate") {
    const auto c = build_complex(box_cover(zw_ideal()));
    const auto cert = index_certificate(c);
    CHECK(cert.k == 2);
    REQUIRE(cert.entries.size() == 3);  // 2^k - 1
    CHECK(cert.entries[0].sign == 1);
    CHECK(cert.entries[0].q == 1);
    CHECK(cert.entries[0].shuffle == std::vector<std::size_t>{0});
    CHECK(cert.entries[1].sign == 1);
    CHECK(cert.entries[1].shuffle == std::vector<std::size_t>{1});
    CHECK(cert.entries[2].sign == -1);
    CHECK(cert.entries[2].q == 2);
    CHECK(cert.entries[2].shuffle == (std::vector<std::size_t>{0, 1}));

    const auto single = index_certificate(build_complex({BoxSpec::from_bounds(1, {{0, 0}})}));
    REQUIRE(single.entries.size() == 1);
    CHECK(single.entries[0].sign == 1);

    // shape for a k=3 cover: signs alternate with q, multiplicities C(k,q)
    const auto c3 = build_complex({BoxSpec::from_bounds(3, {{0, 0}}),
                                   BoxSpec::from_bounds(3, {{1, 0}}),
                                   BoxSpec::from_bounds(3, {{2, 0}})});
    const auto cert3 = index_certificate(c3);
    REQUIRE(cert3.entries.size() == 7);
    std::map<std::size_t, std::size_t> per_level;
    for (const auto& e : cert3.entries) {
        ++per_level[e.q];
        CHECK(e.sign == (e.q % 2 == 1 ? 1 : -1));
    }
    CHECK(per_level == std::map<std::size_t, std::size_t>{{1, 3}, {2, 3}, {3, 1}});
}

TEST_CASE("complex guards") {
    CHECK_THROWS_AS(build_complex({}), PreconditionError);
    const auto c = build_complex(box_cover(zw_ideal()));
    CHECK_THROWS_AS(psi_matrix(c, 2, 3), DimensionError);
    CHECK_THROWS_AS(verify_exactness(c, MonomialIdeal(3, {MultiIndex{1, 1, 1}}), 3),
                    DimensionError);
}
