#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <bergbox/commutators.hpp>
#include <bergbox/gamma.hpp>

#include "test_util.hpp"

using namespace bergbox;

TEST_CASE("ball eigenvalues") {
    auto ball = testutil::ball2();

    auto ev = self_commutator_eigenvalue(ball, MultiIndex{0, 0}, 0);
    CHECK(ev.lambda_prime == 0.0);  // boundary rule at n_var = 0
    CHECK(ev.lambda_double_prime == Catch::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(ev.lambda == Catch::Approx(-1.0 / 3.0).epsilon(1e-13));

    auto ev2 = self_commutator_eigenvalue(ball, MultiIndex{1, 0}, 0);
    CHECK(ev2.lambda_prime == Catch::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(ev2.lambda_double_prime == Catch::Approx(0.5).epsilon(1e-13));
    CHECK(ev2.lambda == Catch::Approx(-1.0 / 6.0).epsilon(1e-13));
}

TEST_CASE("lambda identity holds at the arithmetic level") {
    auto spec = testutil::make_domain({2.0}, {{1.0}, {3.0}});
    testutil::Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        MultiIndex n{static_cast<int>(rng.integer(0, 5)), static_cast<int>(rng.integer(0, 5)),
                     static_cast<int>(rng.integer(0, 5))};
        const std::size_t var = static_cast<std::size_t>(rng.integer(0, 2));
        const auto ev = self_commutator_eigenvalue(spec, n, var);
        REQUIRE(ev.lambda == ev.lambda_prime - ev.lambda_double_prime);
        REQUIRE(ev.lambda_prime >= 0.0);
        REQUIRE(ev.lambda_double_prime >= 0.0);
        if (n[var] == 0) REQUIRE(ev.lambda_prime == 0.0);
    }
}

TEST_CASE("ball decay profile has the closed form 1/(N+3)") {
    auto ball = testutil::ball2();
    const std::vector<long> shells = {10, 20, 40};
    const auto profile = decay_profile(ball, 0, shells);
    REQUIRE(profile.shells.size() == 3);
    for (std::size_t i = 0; i < shells.size(); ++i) {
        CHECK(profile.shells[i].first == shells[i]);
        CHECK(profile.shells[i].second ==
              Catch::Approx(1.0 / (shells[i] + 3.0)).epsilon(1e-12));
    }
    CHECK(profile.shells[0].second > profile.shells[1].second);
    CHECK(profile.shells[1].second > profile.shells[2].second);
}

TEST_CASE("disc decay profile is 1/((N+1)(N+2))") {
    auto disc = normalize_domain(testutil::make_domain({1.0}, {{}}));
    const auto profile = decay_profile(disc, 0, {5, 10, 25});
    // lambda comes from the difference of two near-unit ratios, so the
    // achievable accuracy is absolute, not relative
    for (const auto& [N, v] : profile.shells)
        CHECK(v == Catch::Approx(1.0 / ((N + 1.0) * (N + 2.0))).margin(1e-12));
}

TEST_CASE("profiles are nonnegative and match per-variable recomputation") {
    auto spec = testutil::make_domain({2.0}, {{1.0}, {3.0}});
    const std::vector<long> shells = {4, 9};
    const auto all = decay_profile_all_vars(spec, shells);
    REQUIRE(all.size() == spec.dimension());
    for (std::size_t v = 0; v < spec.dimension(); ++v) {
        for (const auto& [N, val] : all[v].shells) CHECK(val >= 0.0);
        // brute force over the shell with the reference path
        for (std::size_t si = 0; si < shells.size(); ++si) {
            double expect = 0.0;
            for_each_with_degree(spec.dimension(), shells[si], [&](const std::vector<int>& e) {
                const auto ev = self_commutator_eigenvalue(spec, MultiIndex(e), v);
                expect = std::max(expect, std::fabs(ev.lambda));
            });
            CHECK(all[v].shells[si].second == Catch::Approx(expect).epsilon(1e-10));
        }
    }
}

TEST_CASE("decay profile rejects bad shells") {
    auto ball = testutil::ball2();
    CHECK_THROWS_AS(decay_profile(ball, 0, {}), ConfigError);
    CHECK_THROWS_AS(decay_profile(ball, 0, {5, 5}), ConfigError);
    CHECK_THROWS_AS(decay_profile(ball, 0, {0, 5}), ConfigError);
}

TEST_CASE("truncated diagonal") {
    auto ball = testutil::ball2();
    const auto diag0 = truncated_self_commutator_diagonal(ball, 0, 0);
    REQUIRE(diag0.size() == 1);
    CHECK(diag0[0].lambda == Catch::Approx(-1.0 / 3.0).epsilon(1e-13));

    const long N = 5;
    const auto diag = truncated_self_commutator_diagonal(ball, 0, N);
    CHECK(diag.size() == count_up_to_degree(2, N));  // C(N+m, m)

    // canonical order: degrees ascend
    for (std::size_t i = 1; i < diag.size(); ++i)
        CHECK(diag[i - 1].n.degree() <= diag[i].n.degree());
}

TEST_CASE("identical constraints give identical eigenvalue multisets") {
    auto spec = testutil::make_domain({1.0}, {{2.0}, {2.0}});
    const auto d1 = truncated_self_commutator_diagonal(spec, 1, 4);
    const auto d2 = truncated_self_commutator_diagonal(spec, 2, 4);
    std::vector<double> v1, v2;
    for (const auto& e : d1) v1.push_back(e.lambda);
    for (const auto& e : d2) v2.push_back(e.lambda);
    std::sort(v1.begin(), v1.end());
    std::sort(v2.begin(), v2.end());
    REQUIRE(v1.size() == v2.size());
    for (std::size_t i = 0; i < v1.size(); ++i) REQUIRE(v1[i] == v2[i]);
}

namespace {

// Dense brute-force assembly of the compressed commutator from the weighted
// shift matrices, the independent oracle for cross_commutator_matrix.
std::vector<std::vector<double>> brute_force_cross(const DomainSpec& spec, std::size_t a,
                                                   std::size_t b, long N) {
    std::vector<MultiIndex> basis;
    for_each_up_to_degree(spec.dimension(), N,
                          [&](const std::vector<int>& e) { basis.emplace_back(e); });
    const std::size_t dim = basis.size();
    auto index_of = [&](const MultiIndex& n) {
        for (std::size_t i = 0; i < dim; ++i)
            if (basis[i] == n) return i;
        throw std::logic_error("missing basis element");
    };
    auto shift_matrix = [&](std::size_t var) {
        std::vector<std::vector<double>> M(dim, std::vector<double>(dim, 0.0));
        for (std::size_t c = 0; c < dim; ++c) {
            const MultiIndex up = basis[c].shifted(var, +1);
            if (up.degree() > N) continue;
            M[index_of(up)][c] = std::exp(0.5 * log_norm_ratio(spec, basis[c], var, +1));
        }
        return M;
    };
    auto mul = [&](const std::vector<std::vector<double>>& X,
                   const std::vector<std::vector<double>>& Y) {
        std::vector<std::vector<double>> Z(dim, std::vector<double>(dim, 0.0));
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t k = 0; k < dim; ++k)
                if (X[i][k] != 0.0)
                    for (std::size_t j = 0; j < dim; ++j) Z[i][j] += X[i][k] * Y[k][j];
        return Z;
    };
    auto transpose = [&](std::vector<std::vector<double>> M) {
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i + 1; j < dim; ++j) std::swap(M[i][j], M[j][i]);
        return M;
    };
    const auto Ma = shift_matrix(a);
    const auto MbStar = transpose(shift_matrix(b));
    const auto AB = mul(Ma, MbStar);
    const auto BA = mul(MbStar, Ma);
    std::vector<std::vector<double>> out(dim, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) out[i][j] = AB[i][j] - BA[i][j];
    return out;
}

} // namespace

TEST_CASE("cross commutator matches the brute-force product") {
    auto check = [](const DomainSpec& spec, std::size_t a, std::size_t b, long N) {
        const auto sparse = cross_commutator_matrix(spec, a, b, N);
        const auto dense = brute_force_cross(spec, a, b, N);
        std::vector<std::vector<double>> got(sparse.rows, std::vector<double>(sparse.cols, 0.0));
        for (const auto& [r, c, v] : sparse.entries) {
            CHECK(got[r][c] == 0.0);  // no duplicate coordinates
            got[r][c] = v;
        }
        for (std::size_t i = 0; i < sparse.rows; ++i)
            for (std::size_t j = 0; j < sparse.cols; ++j)
                REQUIRE(got[i][j] == Catch::Approx(dense[i][j]).margin(1e-12));
        for (std::size_t i = 0; i < sparse.rows; ++i) CHECK(got[i][i] == 0.0);
    };
    check(testutil::ball2(), 0, 1, 3);
    check(testutil::ball2(), 1, 0, 3);
    check(testutil::make_domain({2.0}, {{1.0}, {3.0}}), 0, 2, 2);
}

TEST_CASE("cross commutator edge cases") {
    auto ball = testutil::ball2();
    const auto zero = cross_commutator_matrix(ball, 0, 1, 0);
    CHECK(zero.rows == 1);
    CHECK(zero.entries.empty());
    CHECK(zero.dropped_shifts == 0);

    const auto m = cross_commutator_matrix(ball, 0, 1, 2);
    CHECK(m.dropped_shifts > 0);  // shifts out of degree 2 were cut

    CHECK_THROWS_AS(cross_commutator_matrix(ball, 0, 0, 2), PreconditionError);
}

TEST_CASE("schatten partial sums") {
    auto disc = normalize_domain(testutil::make_domain({1.0}, {{}}));
    // telescoping on the disc: sum 1/((n+1)(n+2)) = 1 - 1/(N+2)
    for (long N : {3L, 10L, 50L})
        CHECK(schatten_partial_sum(disc, 0, 1.0, N) ==
              Catch::Approx(1.0 - 1.0 / (N + 2.0)).epsilon(1e-12));

    // monotone in N
    CHECK(schatten_partial_sum(disc, 0, 1.0, 10) < schatten_partial_sum(disc, 0, 1.0, 20));

    // |lambda| < 1 on the disc, so larger p shrinks the sum
    CHECK(schatten_partial_sum(disc, 0, 2.0, 20) < schatten_partial_sum(disc, 0, 1.0, 20));

    CHECK_THROWS_AS(schatten_partial_sum(disc, 0, 0.0, 5), DomainError);
}

TEST_CASE("omega route matches the factorized Gamma route for z-shifts") {
    // For the z-direction, lambda' factorizes through Gamma ratios:
    //   lambda' = Gamma((a1+1)/p1)/Gamma(a1/p1)
    //           * Gamma(a1/p1 + A + 1)/Gamma((a1+1)/p1 + A + 1),
    // with A = sum_{j>=2} (a_j+1)/p_j + sum_{k,l} (b_kl+1)/q_kl. Both sides
    // are the same Gamma ratio; this pins the omega-based route to it.
    auto check = [](const DomainSpec& spec, const MultiIndex& n) {
        const double p1 = spec.p()[0];
        double A = 0.0;
        for (std::size_t j = 1; j < spec.z_count(); ++j) A += (n[j] + 1.0) / spec.p()[j];
        std::size_t off = spec.z_count();
        for (const auto& c : spec.constraints())
            for (double q : c.q) A += (n[off++] + 1.0) / q;

        const auto ev = self_commutator_eigenvalue(spec, n, 0);
        const double a1 = n[0];
        const double factorized =
            std::exp(log_gamma((a1 + 1.0) / p1) - log_gamma(a1 / p1) +
                     log_gamma(a1 / p1 + A + 1.0) - log_gamma((a1 + 1.0) / p1 + A + 1.0));
        REQUIRE(ev.lambda_prime ==
                Catch::Approx(factorized).epsilon(1e-10));
        // gamma_ratio_exact expresses the second factor once the power of
        // (A+1) is restored.
        const double via_ratio = std::exp(log_gamma((a1 + 1.0) / p1) - log_gamma(a1 / p1)) *
                                 gamma_ratio_exact(a1 / p1, (a1 + 1.0) / p1, A + 1.0) *
                                 std::pow(A + 1.0, -1.0 / p1);
        REQUIRE(ev.lambda_prime == Catch::Approx(via_ratio).epsilon(1e-10));
    };
    check(testutil::make_domain({2.0}, {{1.0}}), MultiIndex{1, 40});
    check(testutil::make_domain({2.0}, {{1.0}}), MultiIndex{3, 200});
    check(testutil::make_domain({1.0, 2.0}, {{1.5}, {3.0}}), MultiIndex{2, 5, 30, 60});
    check(testutil::ball2(), MultiIndex{4, 100});
}
