#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "bergbox/domain.hpp"
#include "bergbox/errors.hpp"
#include "bergbox/multiindex.hpp"

namespace bergbox {

struct MonteCarloEstimate {
    double log_estimate = 0.0;  // ln of the estimated norm
    double log_stderr = 0.0;    // standard error propagated to log scale
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;     // samples landing inside the domain
};

namespace detail {

// 53-bit uniform double in [0,1) from one mt19937_64 draw. Written out so
// the sample stream is pinned by the named generator alone, not by any
// library distribution.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double ipow(double base, int e) {
    double r = 1.0;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

} // namespace detail

/// Independent Monte Carlo estimate of ln omega(n).
///
/// In modulus-squared variables u_i = |coordinate_i|^2 the norm becomes
///   omega(n) = pi^m * E[ u^n * 1_Omega(u) ],  u uniform on [0,1]^m,
/// with the angular integrations done analytically. One mt19937_64 stream
/// seeded with `seed` fills the m coordinates of each sample in canonical
/// variable order, one sample after another, so results are reproducible
/// bit for bit. Guarded to dimension m <= 6.
inline MonteCarloEstimate monte_carlo_log_norm(const DomainSpec& spec, const MultiIndex& n,
                                               std::uint64_t samples, std::uint64_t seed) {
    if (!spec.normalized())
        throw PreconditionError("monte_carlo_log_norm: domain spec must be normalized first");
    ensure_dimension(spec, n, "monte_carlo_log_norm");
    if (samples == 0) throw PreconditionError("monte_carlo_log_norm: samples must be >= 1");
    const std::size_t m = spec.dimension();
    if (m > 6)
        throw ResourceError("monte_carlo_log_norm: dimension " + std::to_string(m) +
                            " exceeds the practical guard m <= 6");

    const std::size_t J = spec.z_count();
    const std::size_t K = spec.constraint_count();

    std::mt19937_64 rng(seed);
    std::vector<double> u(m);
    double sum = 0.0, sum_sq = 0.0;
    std::uint64_t hits = 0;

    for (std::uint64_t s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < m; ++i) u[i] = detail::uniform01(rng);

        double zpart = 0.0;
        for (std::size_t j = 0; j < J; ++j) zpart += std::pow(u[j], spec.p()[j]);
        bool inside;
        if (K == 0) {
            inside = zpart < 1.0;
        } else {
            inside = true;
            std::size_t offset = J;
            for (std::size_t k = 0; k < K && inside; ++k) {
                const auto& q = spec.constraints()[k].q;
                double lhs = zpart;
                for (std::size_t l = 0; l < q.size(); ++l) lhs += std::pow(u[offset + l], q[l]);
                inside = lhs < 1.0;
                offset += q.size();
            }
        }
        if (!inside) continue;
        ++hits;
        double f = 1.0;
        for (std::size_t i = 0; i < m; ++i) f *= detail::ipow(u[i], n[i]);
        sum += f;
        sum_sq += f * f;
    }

    MonteCarloEstimate out;
    out.samples = samples;
    out.hits = hits;
    const double S = static_cast<double>(samples);
    const double mean = sum / S;
    if (!(mean > 0.0)) {
        out.log_estimate = -std::numeric_limits<double>::infinity();
        out.log_stderr = std::numeric_limits<double>::infinity();
        return out;
    }
    const double var = samples > 1 ? std::max(0.0, (sum_sq - S * mean * mean) / (S - 1.0)) : 0.0;
    const double se = std::sqrt(var / S);
    out.log_estimate = static_cast<double>(m) * std::log(M_PI) + std::log(mean);
    out.log_stderr = se / mean;
    return out;
}

} // namespace bergbox
