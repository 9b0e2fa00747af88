#pragma once

#include <cmath>
#include <cstdint>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "bergbox/budget.hpp"
#include "bergbox/domain.hpp"
#include "bergbox/errors.hpp"
#include "bergbox/multiindex.hpp"
#include "bergbox/norms.hpp"

namespace bergbox {

/// Diagonal eigenvalue of the self-commutator [M_var, M_var*] on the
/// normalized monomial basis:
///   lambda'  = omega(n) / omega(n - e_var), or 0 when n_var = 0,
///   lambda'' = omega(n + e_var) / omega(n),
///   lambda   = lambda' - lambda''.
struct CommutatorEigenvalue {
    MultiIndex n;
    std::size_t var = 0;
    double lambda_prime = 0.0;
    double lambda_double_prime = 0.0;
    double lambda = 0.0;
};

inline CommutatorEigenvalue self_commutator_eigenvalue(const DomainSpec& spec, const MultiIndex& n,
                                                       std::size_t var) {
    ensure_dimension(spec, n, "self_commutator_eigenvalue");
    if (var >= n.size())
        throw DimensionError("self_commutator_eigenvalue: variable index out of range");
    CommutatorEigenvalue out;
    out.n = n;
    out.var = var;
    out.lambda_prime = n[var] > 0 ? std::exp(-log_norm_ratio(spec, n, var, -1)) : 0.0;
    out.lambda_double_prime = std::exp(log_norm_ratio(spec, n, var, +1));
    out.lambda = out.lambda_prime - out.lambda_double_prime;
    return out;
}

/// Per-shell maxima of |lambda| for one variable; shells use the l1 norm
/// |n| = sum of entries.
struct DecayProfile {
    std::size_t var = 0;
    std::vector<std::pair<long, double>> shells;  // (N, max |lambda| over |n| = N)
};

namespace detail {

inline void check_shells(const std::vector<long>& shells, const char* where) {
    if (shells.empty()) throw ConfigError(std::string(where) + ": shell list is empty");
    long prev = 0;
    for (std::size_t i = 0; i < shells.size(); ++i) {
        if (shells[i] <= 0 || (i > 0 && shells[i] <= prev))
            throw ConfigError(std::string(where) + ": shells must be positive and strictly increasing");
        prev = shells[i];
    }
}

} // namespace detail

/// Decay profiles for every variable in one pass. Each shell costs one
/// table-backed norm evaluation per index plus one shifted evaluation per
/// neighbor, so large shells stay affordable without materializing caches.
inline std::vector<DecayProfile> decay_profile_all_vars(const DomainSpec& spec,
                                                        const std::vector<long>& shells) {
    detail::ensure_normalized(spec, "decay_profile");
    detail::check_shells(shells, "decay_profile");
    const std::size_t m = spec.dimension();

    std::uint64_t total = 0;
    for (long N : shells) total += count_with_degree(m, N);
    check_budget(total, "decay_profile");

    std::vector<DecayProfile> out(m);
    for (std::size_t v = 0; v < m; ++v) out[v].var = v;

    const long max_entry = shells.back();
    ShellNormEvaluator eval(spec, max_entry);
    auto terms = eval.make_terms();

    for (long N : shells) {
        std::vector<double> shell_max(m, 0.0);
        for_each_with_degree(m, N, [&](const std::vector<int>& e) {
            MultiIndex n(e);
            eval.fill_terms(n, terms);
            const double base = eval.value(terms);
            for (std::size_t v = 0; v < m; ++v) {
                const double lp =
                    n[v] > 0 ? std::exp(base - eval.value_shifted(n, terms, v, -1)) : 0.0;
                const double lpp = std::exp(eval.value_shifted(n, terms, v, +1) - base);
                const double lambda = std::fabs(lp - lpp);
                if (lambda > shell_max[v]) shell_max[v] = lambda;
            }
        });
        for (std::size_t v = 0; v < m; ++v) out[v].shells.emplace_back(N, shell_max[v]);
    }
    return out;
}

/// max |lambda| over each l1 shell for a single variable.
inline DecayProfile decay_profile(const DomainSpec& spec, std::size_t var,
                                  const std::vector<long>& shells) {
    if (var >= spec.dimension()) throw DimensionError("decay_profile: variable index out of range");
    return decay_profile_all_vars(spec, shells)[var];
}

/// All diagonal eigenvalues for |n| <= N, in canonical (grlex) order.
/// Norms come from an immutable shell-indexed cache, one lookup each.
inline std::vector<CommutatorEigenvalue> truncated_self_commutator_diagonal(const DomainSpec& spec,
                                                                            std::size_t var,
                                                                            long N) {
    detail::ensure_normalized(spec, "truncated_self_commutator_diagonal");
    if (var >= spec.dimension())
        throw DimensionError("truncated_self_commutator_diagonal: variable index out of range");
    if (N < 0) throw DomainError("truncated_self_commutator_diagonal: N must be >= 0");
    const std::size_t m = spec.dimension();
    check_budget(count_up_to_degree(m, N + 1), "truncated_self_commutator_diagonal");

    std::vector<long> degrees(static_cast<std::size_t>(N) + 2);
    for (long d = 0; d <= N + 1; ++d) degrees[static_cast<std::size_t>(d)] = d;
    NormCache cache(spec, degrees);

    std::vector<CommutatorEigenvalue> out;
    out.reserve(static_cast<std::size_t>(count_up_to_degree(m, N)));
    for_each_up_to_degree(m, N, [&](const std::vector<int>& e) {
        MultiIndex n(e);
        CommutatorEigenvalue ev;
        ev.n = n;
        ev.var = var;
        const double base = cache.lookup(n);
        ev.lambda_prime = n[var] > 0 ? std::exp(base - cache.lookup(n.shifted(var, -1))) : 0.0;
        ev.lambda_double_prime = std::exp(cache.lookup(n.shifted(var, +1)) - base);
        ev.lambda = ev.lambda_prime - ev.lambda_double_prime;
        out.push_back(std::move(ev));
    });
    return out;
}

/// Sparse matrix in coordinate form over the basis {b_n : |n| <= N} in
/// canonical (grlex) order. `dropped_shifts` counts compositions whose
/// intermediate index left the truncation and was zeroed out.
struct SparseCommutatorMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::tuple<std::size_t, std::size_t, double>> entries;  // (row, col, value)
    std::uint64_t dropped_shifts = 0;
};

/// [M_a, M_b*] compressed to span{b_n : |n| <= N}, assembled column by
/// column from norm ratios. Products are of the compressed shifts, so a
/// composition that would pass through degree N+1 is dropped and counted.
inline SparseCommutatorMatrix cross_commutator_matrix(const DomainSpec& spec, std::size_t var_a,
                                                      std::size_t var_b, long N) {
    detail::ensure_normalized(spec, "cross_commutator_matrix");
    const std::size_t m = spec.dimension();
    if (var_a >= m || var_b >= m)
        throw DimensionError("cross_commutator_matrix: variable index out of range");
    if (var_a == var_b)
        throw PreconditionError("cross_commutator_matrix: variables must differ");
    if (N < 0) throw DomainError("cross_commutator_matrix: N must be >= 0");
    check_budget(count_up_to_degree(m, N + 1), "cross_commutator_matrix");

    std::vector<MultiIndex> basis;
    std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> index;
    basis.reserve(static_cast<std::size_t>(count_up_to_degree(m, N)));
    for_each_up_to_degree(m, N, [&](const std::vector<int>& e) {
        MultiIndex n(e);
        index.emplace(n, basis.size());
        basis.push_back(std::move(n));
    });

    std::vector<long> degrees(static_cast<std::size_t>(N) + 2);
    for (long d = 0; d <= N + 1; ++d) degrees[static_cast<std::size_t>(d)] = d;
    NormCache cache(spec, degrees);
    auto weight = [&](const MultiIndex& from, std::size_t var) {
        // sqrt(omega(from + e_var) / omega(from))
        return std::exp(0.5 * (cache.lookup(from.shifted(var, +1)) - cache.lookup(from)));
    };

    SparseCommutatorMatrix out;
    out.rows = out.cols = basis.size();
    for (std::size_t c = 0; c < basis.size(); ++c) {
        const MultiIndex& n = basis[c];
        if (n[var_b] == 0) continue;  // both compositions annihilate b_n
        double value = 0.0;
        // M_a M_b* : n -> n - e_b -> n - e_b + e_a
        const MultiIndex down = n.shifted(var_b, -1);
        value += weight(down, var_b) * weight(down, var_a);
        // M_b* M_a : n -> n + e_a -> n + e_a - e_b ; leaves the truncation at |n| = N
        if (n.degree() < N) {
            const MultiIndex up = n.shifted(var_a, +1);
            value -= weight(n, var_a) * weight(up.shifted(var_b, -1), var_b);
        } else {
            ++out.dropped_shifts;
        }
        const MultiIndex target = down.shifted(var_a, +1);
        out.entries.emplace_back(index.at(target), c, value);
    }
    return out;
}

/// Partial Schatten sum  sum_{|n| <= N} |lambda(n)|^p  for the diagonal
/// self-commutator of one variable.
inline double schatten_partial_sum(const DomainSpec& spec, std::size_t var, double p, long N) {
    if (!(p > 0.0)) throw DomainError("schatten_partial_sum: p must be positive");
    double acc = 0.0;
    for (const auto& ev : truncated_self_commutator_diagonal(spec, var, N))
        acc += std::pow(std::fabs(ev.lambda), p);
    return acc;
}

} // namespace bergbox
