#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "bergbox/budget.hpp"
#include "bergbox/errors.hpp"
#include "bergbox/multiindex.hpp"

namespace bergbox {

/// Ideal generated by the monomials z^alpha_1, ..., z^alpha_l. Membership is
/// coordinatewise divisibility. Generators are kept as given (distinct, not
/// necessarily minimal); l = 0 is the zero ideal, valid for membership only.
class MonomialIdeal {
public:
    MonomialIdeal(std::size_t m, std::vector<MultiIndex> generators)
        : m_(m), generators_(std::move(generators)) {
        if (m_ == 0) throw ConfigError("MonomialIdeal: dimension must be >= 1");
        for (const auto& g : generators_)
            if (g.size() != m_)
                throw DimensionError("MonomialIdeal: generator " + g.to_string() +
                                     " has wrong length");
        for (std::size_t i = 0; i < generators_.size(); ++i)
            for (std::size_t j = i + 1; j < generators_.size(); ++j)
                if (generators_[i] == generators_[j])
                    throw ConfigError("MonomialIdeal: duplicate generator " +
                                      generators_[i].to_string());
    }

    static MonomialIdeal zero(std::size_t m) { return MonomialIdeal(m, {}); }

    std::size_t dimension() const { return m_; }
    const std::vector<MultiIndex>& generators() const { return generators_; }

    bool contains(const MultiIndex& n) const {
        if (n.size() != m_) throw DimensionError("MonomialIdeal::contains: dimension mismatch");
        for (const auto& g : generators_) {
            bool divides = true;
            for (std::size_t i = 0; i < m_ && divides; ++i) divides = g[i] <= n[i];
            if (divides) return true;
        }
        return false;
    }

private:
    std::size_t m_;
    std::vector<MultiIndex> generators_;
};

inline bool ideal_contains(const MonomialIdeal& ideal, const MultiIndex& n) {
    return ideal.contains(n);
}

/// Truncated staircase complement: every n in the grid [0, N]^m with
/// z^n not in the ideal, returned in canonical (grlex) order.
inline std::vector<MultiIndex> staircase_complement(const MonomialIdeal& ideal, int N) {
    if (N < 0) throw DomainError("staircase_complement: N must be >= 0");
    const std::size_t m = ideal.dimension();
    std::uint64_t grid = 1;
    for (std::size_t i = 0; i < m; ++i) {
        grid *= static_cast<std::uint64_t>(N) + 1;
        check_budget(grid, "staircase_complement");
    }
    std::vector<MultiIndex> out;
    for_each_in_grid(m, N, [&](const std::vector<int>& e) {
        MultiIndex n(e);
        if (!ideal.contains(n)) out.push_back(std::move(n));
    });
    std::sort(out.begin(), out.end(), grlex_less);
    return out;
}

} // namespace bergbox
