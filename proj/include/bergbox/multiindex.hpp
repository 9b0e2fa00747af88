#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "bergbox/budget.hpp"
#include "bergbox/errors.hpp"

namespace bergbox {

/// Exponent vector n in N^m, stored in the canonical variable order
/// (z-block first, then the w-blocks in constraint order).
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t m) : e_(m, 0) {}
    MultiIndex(std::initializer_list<int> init) : e_(init) { validate(); }
    explicit MultiIndex(std::vector<int> entries) : e_(std::move(entries)) { validate(); }

    std::size_t size() const { return e_.size(); }
    int operator[](std::size_t i) const { return e_[i]; }
    int& operator[](std::size_t i) { return e_[i]; }
    const std::vector<int>& entries() const { return e_; }

    /// l1 norm |n|.
    long degree() const { return std::accumulate(e_.begin(), e_.end(), 0L); }

    /// Copy with entry `var` moved by `delta`. Throws BoundaryError if the
    /// result would be negative.
    MultiIndex shifted(std::size_t var, int delta) const {
        if (var >= e_.size()) throw DimensionError("MultiIndex::shifted: variable index out of range");
        if (e_[var] + delta < 0)
            throw BoundaryError("MultiIndex::shifted: entry " + std::to_string(var) +
                                " would become negative");
        MultiIndex out = *this;
        out.e_[var] += delta;
        return out;
    }

    bool operator==(const MultiIndex& o) const { return e_ == o.e_; }
    bool operator!=(const MultiIndex& o) const { return e_ != o.e_; }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(e_[i]);
        }
        return s + ")";
    }

private:
    void validate() const {
        for (int v : e_)
            if (v < 0) throw DomainError("MultiIndex: negative entry");
    }

    std::vector<int> e_;
};

/// Graded lexicographic order: degree first, then lex on the entries.
/// This is the canonical index order used by every listing and matrix basis.
inline bool grlex_less(const MultiIndex& a, const MultiIndex& b) {
    long da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.entries() < b.entries();
}

struct MultiIndexHash {
    std::size_t operator()(const MultiIndex& n) const {
        std::uint64_t h = 1469598103934665603ull;
        for (int v : n.entries()) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

/// C(n, k) in exact integer arithmetic; throws ResourceError on overflow.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > static_cast<unsigned __int128>(UINT64_MAX))
            throw ResourceError("binomial: result exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

/// Number of n in N^m with |n| = N.
inline std::uint64_t count_with_degree(std::size_t m, long N) {
    if (m == 0) return N == 0 ? 1 : 0;
    return binomial(static_cast<std::uint64_t>(N) + m - 1, m - 1);
}

/// Number of n in N^m with |n| <= N.
inline std::uint64_t count_up_to_degree(std::size_t m, long N) {
    if (m == 0) return 1;
    return binomial(static_cast<std::uint64_t>(N) + m, m);
}

namespace detail {

template <typename Fn>
void visit_compositions(std::vector<int>& scratch, std::size_t pos, long rest, Fn&& fn) {
    if (pos + 1 == scratch.size()) {
        scratch[pos] = static_cast<int>(rest);
        fn(scratch);
        return;
    }
    for (long v = 0; v <= rest; ++v) {
        scratch[pos] = static_cast<int>(v);
        visit_compositions(scratch, pos + 1, rest - v, fn);
    }
}

} // namespace detail

/// Visit every n in N^m with |n| = N in lex-ascending entry order.
/// The callback receives a scratch vector valid only during the call.
template <typename Fn>
void for_each_with_degree(std::size_t m, long N, Fn&& fn) {
    if (m == 0) {
        if (N == 0) {
            std::vector<int> empty;
            fn(empty);
        }
        return;
    }
    std::vector<int> scratch(m, 0);
    detail::visit_compositions(scratch, 0, N, fn);
}

/// Visit every n in N^m with |n| <= N, degree by degree (grlex order).
template <typename Fn>
void for_each_up_to_degree(std::size_t m, long N, Fn&& fn) {
    for (long d = 0; d <= N; ++d) for_each_with_degree(m, d, fn);
}

/// Visit every n in the box grid [0, N]^m in lex-ascending order.
template <typename Fn>
void for_each_in_grid(std::size_t m, int N, Fn&& fn) {
    std::vector<int> scratch(m, 0);
    if (m == 0) {
        fn(scratch);
        return;
    }
    while (true) {
        fn(scratch);
        std::size_t i = m;
        while (i > 0) {
            --i;
            if (scratch[i] < N) {
                ++scratch[i];
                for (std::size_t j = i + 1; j < m; ++j) scratch[j] = 0;
                break;
            }
            if (i == 0) return;
        }
    }
}

} // namespace bergbox
