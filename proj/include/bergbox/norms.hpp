#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bergbox/budget.hpp"
#include "bergbox/domain.hpp"
#include "bergbox/errors.hpp"
#include "bergbox/gamma.hpp"
#include "bergbox/multiindex.hpp"

namespace bergbox {

namespace detail {

inline void ensure_normalized(const DomainSpec& spec, const char* where) {
    if (!spec.normalized())
        throw PreconditionError(std::string(where) +
                                ": domain spec must be normalized first (normalize_domain)");
}

} // namespace detail

/// ln of the squared Bergman norm of z^alpha on a pure ellipsoid
///   { sum_j |z_j|^(2 p_j) < 1 }:
///   ln [ pi^J / prod p_j * prod Gamma((a_j+1)/p_j) / Gamma(1 + sum (a_j+1)/p_j) ].
/// The general product formula degenerates when a constraint has no
/// w-variables, so this case is computed directly from the radial integral.
inline double log_norm_pure_ellipsoid(const DomainSpec& spec, const MultiIndex& alpha) {
    detail::ensure_normalized(spec, "log_norm_pure_ellipsoid");
    if (!spec.pure_ellipsoid())
        throw PreconditionError("log_norm_pure_ellipsoid: spec is not the pure-ellipsoid marker");
    ensure_dimension(spec, alpha, "log_norm_pure_ellipsoid");

    const auto& p = spec.p();
    double value = static_cast<double>(p.size()) * std::log(M_PI);
    double s = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        const double a = (alpha[j] + 1.0) / p[j];
        value += log_gamma(a) - std::log(p[j]);
        s += a;
    }
    return value - log_gamma(1.0 + s);
}

/// ln omega(alpha, beta): the squared Bergman norm of the monomial with
/// exponent n over the intersection domain,
///   2^K pi^m / (prod p prod q) * 1/prod_k |(2 beta_k + 2)/q_k|
///   * B(|(alpha+1)/p|, |(beta+1)/q| + 1) * B((alpha+1)/p) * prod_k B((beta_k+1)/q_k),
/// computed entirely in log space. Constraint contributions are accumulated
/// in sorted order so that permuting constraints with identical q-vectors
/// (together with the matching w-blocks of n) leaves the result bit-identical.
/// Dispatches to the pure-ellipsoid formula on the marker.
inline double log_norm(const DomainSpec& spec, const MultiIndex& n) {
    detail::ensure_normalized(spec, "log_norm");
    if (spec.pure_ellipsoid()) return log_norm_pure_ellipsoid(spec, n);
    ensure_dimension(spec, n, "log_norm");

    const auto& p = spec.p();
    const std::size_t J = p.size();
    const std::size_t K = spec.constraint_count();
    const std::size_t m = spec.dimension();

    double value = static_cast<double>(K) * std::log(2.0) + static_cast<double>(m) * std::log(M_PI);

    std::vector<double> za(J);
    double s_alpha = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
        za[j] = (n[j] + 1.0) / p[j];
        s_alpha += za[j];
        value -= std::log(p[j]);
    }
    value += log_multibeta(za);

    // (s_k, contribution_k) per constraint, then a sorted reduction.
    std::vector<std::pair<double, double>> parts;
    parts.reserve(K);
    std::size_t offset = J;
    for (std::size_t k = 0; k < K; ++k) {
        const auto& q = spec.constraints()[k].q;
        std::vector<double> wb(q.size());
        double s_k = 0.0, contrib = 0.0;
        for (std::size_t l = 0; l < q.size(); ++l) {
            wb[l] = (n[offset + l] + 1.0) / q[l];
            s_k += wb[l];
            contrib -= std::log(q[l]);
        }
        contrib += log_multibeta(wb);
        contrib -= std::log(2.0 * s_k);
        parts.emplace_back(s_k, contrib);
        offset += q.size();
    }
    std::sort(parts.begin(), parts.end());
    double s_beta = 0.0;
    for (const auto& [s_k, contrib] : parts) {
        s_beta += s_k;
        value += contrib;
    }
    return value + log_beta(s_alpha, s_beta + 1.0);
}

/// Log-ratio of neighboring norms in the direction of the step:
///   log_norm_ratio(n, var, delta) = ln omega(n + delta e_var) - ln omega(n),
/// so the +1 and -1 steps across the same edge are negatives of each other.
/// delta = -1 at n_var = 0 is a boundary error; callers encode the
/// "set to zero" rule.
inline double log_norm_ratio(const DomainSpec& spec, const MultiIndex& n, std::size_t var,
                             int delta) {
    if (delta != 1 && delta != -1) throw DomainError("log_norm_ratio: delta must be +1 or -1");
    ensure_dimension(spec, n, "log_norm_ratio");
    if (var >= n.size()) throw DimensionError("log_norm_ratio: variable index out of range");
    if (delta == -1 && n[var] == 0)
        throw BoundaryError("log_norm_ratio: cannot decrement a zero entry");
    return log_norm(spec, n.shifted(var, delta)) - log_norm(spec, n);
}

/// Immutable shell-indexed table of log-norms. Built once for a fixed set of
/// degrees, then shared read-only; lookups outside the built shells throw.
class NormCache {
public:
    NormCache(const DomainSpec& spec, const std::vector<long>& degrees) {
        detail::ensure_normalized(spec, "NormCache");
        std::uint64_t total = 0;
        for (long d : degrees) {
            if (d < 0) throw DomainError("NormCache: negative degree");
            total += count_with_degree(spec.dimension(), d);
        }
        check_budget(total, "NormCache");
        table_.reserve(static_cast<std::size_t>(total));
        for (long d : degrees) {
            for_each_with_degree(spec.dimension(), d, [&](const std::vector<int>& e) {
                MultiIndex n(e);
                table_.emplace(n, log_norm(spec, n));
            });
        }
    }

    double lookup(const MultiIndex& n) const {
        auto it = table_.find(n);
        if (it == table_.end())
            throw PreconditionError("NormCache: " + n.to_string() + " is outside the cached shells");
        return it->second;
    }

    bool contains(const MultiIndex& n) const { return table_.count(n) != 0; }
    std::size_t size() const { return table_.size(); }

private:
    std::unordered_map<MultiIndex, double, MultiIndexHash> table_;
};

/// Log-norm evaluator for whole-shell sweeps. Per-coordinate Gamma values
/// are tabulated up front, so one evaluation costs O(K) log_gamma calls and
/// one shifted evaluation costs O(1) table adjustments on top. Agrees with
/// log_norm to ~1e-12; the plain function stays the reference path.
class ShellNormEvaluator {
public:
    /// Tables cover multi-index entries 0 .. max_entry+1 (the +1 admits
    /// shifted lookups one step above the sweep's largest entry).
    ShellNormEvaluator(const DomainSpec& spec, long max_entry) : spec_(&spec) {
        detail::ensure_normalized(spec, "ShellNormEvaluator");
        if (max_entry < 0) throw DomainError("ShellNormEvaluator: negative max_entry");
        const std::size_t m = spec.dimension();
        const std::size_t J = spec.z_count();
        inv_exp_.resize(m);
        constraint_of_.resize(m);
        for (std::size_t j = 0; j < J; ++j) {
            inv_exp_[j] = 1.0 / spec.p()[j];
            constraint_of_[j] = kZBlock;
        }
        std::size_t offset = J;
        for (std::size_t k = 0; k < spec.constraint_count(); ++k) {
            for (double q : spec.constraints()[k].q) {
                inv_exp_[offset] = 1.0 / q;
                constraint_of_[offset] = k;
                ++offset;
            }
        }
        table_.resize(m);
        const long top = max_entry + 1;
        for (std::size_t i = 0; i < m; ++i) {
            table_[i].resize(static_cast<std::size_t>(top) + 1);
            for (long v = 0; v <= top; ++v)
                table_[i][static_cast<std::size_t>(v)] = log_gamma((v + 1.0) * inv_exp_[i]);
        }

        const std::size_t K = spec.constraint_count();
        const double mm = static_cast<double>(m);
        if (spec.pure_ellipsoid()) {
            const_term_ = mm * std::log(M_PI);
            for (double pj : spec.p()) const_term_ -= std::log(pj);
        } else {
            const_term_ = static_cast<double>(K) * std::log(2.0) + mm * std::log(M_PI);
            for (double pj : spec.p()) const_term_ -= std::log(pj);
            for (const auto& c : spec.constraints())
                for (double q : c.q) const_term_ -= std::log(q);
        }
    }

    struct Terms {
        double table_sum = 0.0;
        double s_alpha = 0.0;
        std::vector<double> s_k;
    };

    Terms make_terms() const { return Terms{0.0, 0.0, std::vector<double>(spec_->constraint_count(), 0.0)}; }

    void fill_terms(const MultiIndex& n, Terms& t) const {
        t.table_sum = 0.0;
        t.s_alpha = 0.0;
        std::fill(t.s_k.begin(), t.s_k.end(), 0.0);
        for (std::size_t i = 0; i < n.size(); ++i) {
            t.table_sum += table_[i][static_cast<std::size_t>(n[i])];
            const double a = (n[i] + 1.0) * inv_exp_[i];
            if (constraint_of_[i] == kZBlock)
                t.s_alpha += a;
            else
                t.s_k[constraint_of_[i]] += a;
        }
    }

    double value(const Terms& t) const {
        if (spec_->pure_ellipsoid()) return const_term_ + t.table_sum - log_gamma(1.0 + t.s_alpha);
        double s_beta = 0.0, penalty = 0.0;
        for (double s : t.s_k) {
            s_beta += s;
            penalty += log_gamma(s) + std::log(2.0 * s);
        }
        return const_term_ + t.table_sum - penalty + log_gamma(s_beta + 1.0) -
               log_gamma(t.s_alpha + s_beta + 1.0);
    }

    double log_norm(const MultiIndex& n) const {
        Terms t = make_terms();
        fill_terms(n, t);
        return value(t);
    }

    /// Value at n + delta * e_var given the terms already filled for n.
    double value_shifted(const MultiIndex& n, const Terms& t, std::size_t var, int delta) const {
        const long v = n[var] + delta;
        if (v < 0) throw BoundaryError("ShellNormEvaluator: shift below zero");
        const double table_sum =
            t.table_sum - table_[var][static_cast<std::size_t>(n[var])] +
            table_[var][static_cast<std::size_t>(v)];
        const double da = static_cast<double>(delta) * inv_exp_[var];
        if (spec_->pure_ellipsoid())
            return const_term_ + table_sum - log_gamma(1.0 + t.s_alpha + da);

        double s_alpha = t.s_alpha;
        double s_beta = 0.0, penalty = 0.0;
        const std::size_t kc = constraint_of_[var];
        if (kc == kZBlock) s_alpha += da;
        for (std::size_t k = 0; k < t.s_k.size(); ++k) {
            const double s = t.s_k[k] + (k == kc ? da : 0.0);
            s_beta += s;
            penalty += log_gamma(s) + std::log(2.0 * s);
        }
        return const_term_ + table_sum - penalty + log_gamma(s_beta + 1.0) -
               log_gamma(s_alpha + s_beta + 1.0);
    }

private:
    static constexpr std::size_t kZBlock = static_cast<std::size_t>(-1);

    const DomainSpec* spec_;
    std::vector<double> inv_exp_;
    std::vector<std::size_t> constraint_of_;
    std::vector<std::vector<double>> table_;
    double const_term_ = 0.0;
};

} // namespace bergbox
