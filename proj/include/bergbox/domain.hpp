#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bergbox/errors.hpp"
#include "bergbox/multiindex.hpp"

namespace bergbox {

/// One defining inequality: sum_j |z_j|^(2 p_j) + sum_l |w_kl|^(2 q_kl) < 1.
/// The z-part is shared across constraints; only the w-exponents q vary.
/// `reserved_p` holds the reserved per-constraint z-exponent key accepted by
/// the config schema; every formula path rejects specs that use it.
struct EllipsoidConstraint {
    std::vector<double> q;
    std::optional<std::vector<double>> reserved_p;

    std::size_t w_count() const { return q.size(); }
};

/// Intersection of complex ellipsoids over a shared z-block:
///   { sum_j |z_j|^(2 p_j) + sum_l |w_kl|^(2 q_kl) < 1 for k = 1..K }.
/// After normalization a domain with no w-variables at all is represented by
/// the pure-ellipsoid marker (empty constraint list).
class DomainSpec {
public:
    static DomainSpec make(std::vector<double> p, std::vector<EllipsoidConstraint> constraints) {
        if (p.empty()) throw ConfigError("domain: p must be nonempty (J >= 1)");
        for (std::size_t j = 0; j < p.size(); ++j)
            if (!(p[j] > 0.0) || !std::isfinite(p[j]))
                throw ConfigError("domain: p[" + std::to_string(j) + "] must be positive and finite");
        if (constraints.empty()) throw ConfigError("domain: at least one constraint required (K >= 1)");
        for (std::size_t k = 0; k < constraints.size(); ++k) {
            const auto& q = constraints[k].q;
            for (std::size_t l = 0; l < q.size(); ++l)
                if (!(q[l] > 0.0) || !std::isfinite(q[l]))
                    throw ConfigError("domain: constraints[" + std::to_string(k) + "].q[" +
                                      std::to_string(l) + "] must be positive and finite");
            if (constraints[k].reserved_p) {
                const auto& rp = *constraints[k].reserved_p;
                if (rp.size() != p.size())
                    throw ConfigError("domain: constraints[" + std::to_string(k) +
                                      "].p must match the length of the top-level p");
                for (std::size_t j = 0; j < rp.size(); ++j)
                    if (!(rp[j] > 0.0) || !std::isfinite(rp[j]))
                        throw ConfigError("domain: constraints[" + std::to_string(k) + "].p[" +
                                          std::to_string(j) + "] must be positive and finite");
            }
        }
        DomainSpec s;
        s.p_ = std::move(p);
        s.constraints_ = std::move(constraints);
        return s;
    }

    const std::vector<double>& p() const { return p_; }
    const std::vector<EllipsoidConstraint>& constraints() const { return constraints_; }

    std::size_t z_count() const { return p_.size(); }            // J
    std::size_t constraint_count() const { return constraints_.size(); }  // K

    std::size_t dimension() const {
        std::size_t m = p_.size();
        for (const auto& c : constraints_) m += c.q.size();
        return m;
    }

    /// True once all constraints carry no w-exponents and have been collapsed.
    bool pure_ellipsoid() const { return pure_marker_; }

    bool uses_reserved_exponents() const {
        for (const auto& c : constraints_)
            if (c.reserved_p) return true;
        return false;
    }

    /// Every formula assumes a normalized spec: either the pure-ellipsoid
    /// marker or all constraints with at least one w-variable.
    bool normalized() const {
        if (uses_reserved_exponents()) return false;
        if (pure_marker_) return constraints_.empty();
        for (const auto& c : constraints_)
            if (c.q.empty()) return false;
        return !constraints_.empty();
    }

    friend DomainSpec normalize_domain(const DomainSpec& spec);

private:
    DomainSpec() = default;

    std::vector<double> p_;
    std::vector<EllipsoidConstraint> constraints_;
    bool pure_marker_ = false;
};

/// Drop constraints with no w-variables: when some other constraint has
/// w-variables, the w-free inequality is implied by it (same z-part, extra
/// nonnegative terms on the left). When every constraint is w-free they all
/// coincide, and the spec collapses to the pure-ellipsoid marker.
inline DomainSpec normalize_domain(const DomainSpec& spec) {
    if (spec.uses_reserved_exponents())
        throw ConfigError("domain: per-constraint z-exponents are reserved in the schema "
                          "but not supported by any computation");
    DomainSpec out;
    out.p_ = spec.p_;
    for (const auto& c : spec.constraints_)
        if (!c.q.empty()) out.constraints_.push_back(c);
    if (out.constraints_.empty()) out.pure_marker_ = true;
    return out;
}

inline void ensure_dimension(const DomainSpec& spec, const MultiIndex& n, const char* where) {
    if (n.size() != spec.dimension())
        throw DimensionError(std::string(where) + ": multi-index has length " +
                             std::to_string(n.size()) + ", domain dimension is " +
                             std::to_string(spec.dimension()));
}

/// Human-readable name of a coordinate in the canonical order:
/// "z1".."zJ" then "w11", "w12", ..., "w21", ...
inline std::string variable_label(const DomainSpec& spec, std::size_t var) {
    if (var < spec.z_count()) return "z" + std::to_string(var + 1);
    std::size_t rest = var - spec.z_count();
    for (std::size_t k = 0; k < spec.constraint_count(); ++k) {
        std::size_t L = spec.constraints()[k].w_count();
        if (rest < L) return "w" + std::to_string(k + 1) + std::to_string(rest + 1);
        rest -= L;
    }
    throw DimensionError("variable_label: index out of range");
}

} // namespace bergbox
