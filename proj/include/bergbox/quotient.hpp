#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "bergbox/boxes.hpp"
#include "bergbox/commutators.hpp"
#include "bergbox/domain.hpp"
#include "bergbox/errors.hpp"
#include "bergbox/ideal.hpp"
#include "bergbox/multiindex.hpp"
#include "bergbox/norms.hpp"

namespace bergbox {

struct ShiftResult {
    MultiIndex target;
    double weight = 0.0;  // sqrt(omega(target) / omega(source))
};

/// Action of the coordinate function on the box module: shift within the box
/// with the normalized-basis weight, or annihilate when the shift leaves it.
inline std::optional<ShiftResult> box_module_shift(const BoxSpec& box, const DomainSpec& spec,
                                                   std::size_t var, const MultiIndex& n) {
    ensure_dimension(spec, n, "box_module_shift");
    if (box.dimension() != n.size()) throw DimensionError("box_module_shift: dimension mismatch");
    if (var >= n.size()) throw DimensionError("box_module_shift: variable index out of range");
    if (!box.contains(n)) throw PreconditionError("box_module_shift: n is not in the box");
    MultiIndex up = n.shifted(var, +1);
    if (!box.contains(up)) return std::nullopt;
    const double w = std::exp(0.5 * log_norm_ratio(spec, n, var, +1));
    return ShiftResult{std::move(up), w};
}

/// Per-shell maxima of the norm ratio with the bounded coordinate pinned at
/// its bound b and incremented to b+1, the compactness diagnostic for the box
/// module. Shells count the l1 norm of the full index; the other coordinates
/// range over the box. Shells with no admissible index report 0.
inline DecayProfile box_ratio_decay(const BoxSpec& box, const DomainSpec& spec,
                                    std::size_t bounded_var, const std::vector<long>& shells) {
    detail::ensure_normalized(spec, "box_ratio_decay");
    if (box.dimension() != spec.dimension())
        throw DimensionError("box_ratio_decay: box and domain dimensions differ");
    if (box.is_empty()) throw PreconditionError("box_ratio_decay: empty box");
    detail::check_shells(shells, "box_ratio_decay");
    int bound = -1;
    for (const auto& [c, b] : box.bounds())
        if (c == bounded_var) bound = b;
    if (bound < 0)
        throw PreconditionError("box_ratio_decay: variable is not bounded by the box");

    const std::size_t m = spec.dimension();
    std::uint64_t total = 0;
    for (long N : shells)
        if (N >= bound) total += count_with_degree(m - 1, N - bound);
    check_budget(total, "box_ratio_decay");

    ShellNormEvaluator eval(spec, shells.back());
    auto terms = eval.make_terms();

    DecayProfile profile;
    profile.var = bounded_var;
    for (long N : shells) {
        double best = 0.0;
        if (N >= bound) {
            // enumerate the other coordinates; coordinate bounded_var stays at `bound`
            for_each_with_degree(m - 1, N - bound, [&](const std::vector<int>& rest) {
                std::vector<int> full(m);
                std::size_t r = 0;
                for (std::size_t i = 0; i < m; ++i)
                    full[i] = (i == bounded_var) ? bound : rest[r++];
                MultiIndex n(full);
                if (!box.contains(n)) return;
                eval.fill_terms(n, terms);
                const double ratio =
                    std::exp(eval.value_shifted(n, terms, bounded_var, +1) - eval.value(terms));
                if (ratio > best) best = ratio;
            });
        }
        profile.shells.emplace_back(N, best);
    }
    return profile;
}

/// Compression of the coordinate multiplication to the quotient module: shift
/// within the staircase complement with the normalized weight, or annihilate
/// when the target falls into the ideal.
inline std::optional<ShiftResult> quotient_shift(const MonomialIdeal& ideal, const DomainSpec& spec,
                                                 std::size_t var, const MultiIndex& n) {
    ensure_dimension(spec, n, "quotient_shift");
    if (ideal.dimension() != n.size()) throw DimensionError("quotient_shift: dimension mismatch");
    if (var >= n.size()) throw DimensionError("quotient_shift: variable index out of range");
    if (ideal.contains(n))
        throw PreconditionError("quotient_shift: n lies in the ideal, not the quotient");
    MultiIndex up = n.shifted(var, +1);
    if (ideal.contains(up)) return std::nullopt;
    const double w = std::exp(0.5 * log_norm_ratio(spec, n, var, +1));
    return ShiftResult{std::move(up), w};
}

/// One diagonal entry of the compressed self-commutator at n in C(I):
///   entry(n) = omega(n)/omega(n - e) * [n - e in C(I)]
///            - omega(n + e)/omega(n) * [n + e in C(I)],
/// with the first term also zero at n_var = 0. For monomial ideals the
/// compressed shifts preserve the monomial basis, so these diagonal entries
/// are exact and the off-diagonal of the self-commutator vanishes.
inline double quotient_self_commutator_entry(const MonomialIdeal& ideal, const DomainSpec& spec,
                                             std::size_t var, const MultiIndex& n) {
    ensure_dimension(spec, n, "quotient_self_commutator_entry");
    if (ideal.dimension() != n.size())
        throw DimensionError("quotient_self_commutator_entry: dimension mismatch");
    if (var >= n.size())
        throw DimensionError("quotient_self_commutator_entry: variable index out of range");
    if (ideal.contains(n))
        throw PreconditionError("quotient_self_commutator_entry: n lies in the ideal");
    double entry = 0.0;
    if (n[var] > 0 && !ideal.contains(n.shifted(var, -1)))
        entry += std::exp(-log_norm_ratio(spec, n, var, -1));
    if (!ideal.contains(n.shifted(var, +1)))
        entry -= std::exp(log_norm_ratio(spec, n, var, +1));
    return entry;
}

/// Shell maxima of |quotient_self_commutator_entry| over C(I), computed with
/// the table-backed evaluator. Reports max |entry| per l1 shell; the zero
/// ideal reproduces the plain self-commutator eigenvalues.
inline DecayProfile quotient_self_commutator_diagnostic(const MonomialIdeal& ideal,
                                                        const DomainSpec& spec, std::size_t var,
                                                        const std::vector<long>& shells) {
    detail::ensure_normalized(spec, "quotient_self_commutator_diagnostic");
    if (ideal.dimension() != spec.dimension())
        throw DimensionError("quotient_self_commutator_diagnostic: dimensions differ");
    if (var >= spec.dimension())
        throw DimensionError("quotient_self_commutator_diagnostic: variable index out of range");
    detail::check_shells(shells, "quotient_self_commutator_diagnostic");

    const std::size_t m = spec.dimension();
    std::uint64_t total = 0;
    for (long N : shells) total += count_with_degree(m, N);
    check_budget(total, "quotient_self_commutator_diagnostic");

    ShellNormEvaluator eval(spec, shells.back());
    auto terms = eval.make_terms();

    DecayProfile profile;
    profile.var = var;
    for (long N : shells) {
        double best = 0.0;
        for_each_with_degree(m, N, [&](const std::vector<int>& e) {
            MultiIndex n(e);
            if (ideal.contains(n)) return;
            eval.fill_terms(n, terms);
            const double base = eval.value(terms);
            double entry = 0.0;
            if (n[var] > 0 && !ideal.contains(n.shifted(var, -1)))
                entry += std::exp(base - eval.value_shifted(n, terms, var, -1));
            if (!ideal.contains(n.shifted(var, +1)))
                entry -= std::exp(eval.value_shifted(n, terms, var, +1) - base);
            const double mag = std::fabs(entry);
            if (mag > best) best = mag;
        });
        profile.shells.emplace_back(N, best);
    }
    return profile;
}

} // namespace bergbox
