#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bergbox/budget.hpp"
#include "bergbox/errors.hpp"
#include "bergbox/ideal.hpp"
#include "bergbox/multiindex.hpp"

namespace bergbox {

/// Box of multi-indices: upper bounds on a subset of coordinates,
///   { n : n_j <= bound_j for every bounded j },
/// unbounded elsewhere. The support of the bounds, sorted, is the box's
/// shuffle. A box constructed with a negative bound is empty (flagged).
class BoxSpec {
public:
    /// Bounds given as (coordinate, bound) pairs, coordinates 0-based and
    /// distinct, bounds >= 0. No pairs means the whole of N^m.
    static BoxSpec from_bounds(std::size_t m, std::vector<std::pair<std::size_t, int>> bounds) {
        BoxSpec b;
        b.m_ = m;
        std::sort(bounds.begin(), bounds.end());
        for (std::size_t i = 0; i < bounds.size(); ++i) {
            if (bounds[i].first >= m) throw DimensionError("BoxSpec: coordinate out of range");
            if (i > 0 && bounds[i].first == bounds[i - 1].first)
                throw ConfigError("BoxSpec: duplicate bounded coordinate");
            if (bounds[i].second < 0) throw ConfigError("BoxSpec: negative bound");
        }
        b.bounds_ = std::move(bounds);
        return b;
    }

    static BoxSpec whole(std::size_t m) { return from_bounds(m, {}); }

    static BoxSpec empty_box(std::size_t m) {
        BoxSpec b;
        b.m_ = m;
        b.empty_ = true;
        return b;
    }

    std::size_t dimension() const { return m_; }
    bool is_empty() const { return empty_; }

    /// Sorted (coordinate, bound) pairs; empty boxes carry none.
    const std::vector<std::pair<std::size_t, int>>& bounds() const { return bounds_; }

    /// The shuffle: bounded coordinates in increasing order.
    std::vector<std::size_t> shuffle() const {
        std::vector<std::size_t> s;
        s.reserve(bounds_.size());
        for (const auto& [c, b] : bounds_) s.push_back(c);
        return s;
    }

    bool contains(const MultiIndex& n) const {
        if (n.size() != m_) throw DimensionError("BoxSpec::contains: dimension mismatch");
        if (empty_) return false;
        for (const auto& [c, b] : bounds_)
            if (n[c] > b) return false;
        return true;
    }

    bool operator==(const BoxSpec& o) const {
        return m_ == o.m_ && empty_ == o.empty_ && bounds_ == o.bounds_;
    }

    /// Deterministic ordering for cover serialization: empty last, then by
    /// the (coordinate, bound) list.
    bool operator<(const BoxSpec& o) const {
        if (empty_ != o.empty_) return !empty_;
        return bounds_ < o.bounds_;
    }

    std::string to_string() const {
        if (empty_) return "{empty}";
        if (bounds_.empty()) return "{all}";
        std::string s = "{";
        for (std::size_t i = 0; i < bounds_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(bounds_[i].first + 1) + "<=" + std::to_string(bounds_[i].second);
        }
        return s + "}";
    }

private:
    std::size_t m_ = 0;
    bool empty_ = false;
    std::vector<std::pair<std::size_t, int>> bounds_;
};

inline bool box_contains(const BoxSpec& box, const MultiIndex& n) { return box.contains(n); }

/// True iff inner is a subset of outer: every bound of outer must be matched
/// by a bound of inner at most as large.
inline bool box_subset(const BoxSpec& inner, const BoxSpec& outer) {
    if (inner.dimension() != outer.dimension())
        throw DimensionError("box_subset: dimension mismatch");
    if (inner.is_empty()) return true;
    if (outer.is_empty()) return false;
    for (const auto& [c, b] : outer.bounds()) {
        bool matched = false;
        for (const auto& [ci, bi] : inner.bounds())
            if (ci == c && bi <= b) {
                matched = true;
                break;
            }
        if (!matched) return false;
    }
    return true;
}

/// Coordinatewise intersection: union of the supports, minimum of bounds.
inline BoxSpec box_intersect(const std::vector<BoxSpec>& boxes) {
    if (boxes.empty()) throw PreconditionError("box_intersect: empty list");
    const std::size_t m = boxes.front().dimension();
    std::vector<int> bound(m, -2);  // -2 marks "unbounded"
    for (const auto& box : boxes) {
        if (box.dimension() != m) throw DimensionError("box_intersect: dimension mismatch");
        if (box.is_empty()) return BoxSpec::empty_box(m);
        for (const auto& [c, b] : box.bounds())
            bound[c] = bound[c] == -2 ? b : std::min(bound[c], b);
    }
    std::vector<std::pair<std::size_t, int>> bounds;
    for (std::size_t c = 0; c < m; ++c)
        if (bound[c] != -2) bounds.emplace_back(c, bound[c]);
    return BoxSpec::from_bounds(m, std::move(bounds));
}

/// Box attached to one selector tuple s in {0..m-1}^l: for each chosen
/// coordinate j, bound_j = min{ alpha_i[s_i] - 1 : s_i = j }. A negative
/// minimum makes the box empty (some generator has exponent 0 there).
inline BoxSpec box_from_tuple(const MonomialIdeal& ideal, const std::vector<std::size_t>& tuple) {
    const std::size_t m = ideal.dimension();
    const auto& gens = ideal.generators();
    if (tuple.size() != gens.size())
        throw PreconditionError("box_from_tuple: tuple length must equal the generator count");
    std::vector<int> bound(m, -2);
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        const std::size_t j = tuple[i];
        if (j >= m) throw DimensionError("box_from_tuple: tuple entry out of range");
        const int candidate = gens[i][j] - 1;
        bound[j] = bound[j] == -2 ? candidate : std::min(bound[j], candidate);
    }
    std::vector<std::pair<std::size_t, int>> bounds;
    for (std::size_t c = 0; c < m; ++c) {
        if (bound[c] == -2) continue;
        if (bound[c] < 0) return BoxSpec::empty_box(m);
        bounds.emplace_back(c, bound[c]);
    }
    return BoxSpec::from_bounds(m, std::move(bounds));
}

/// Cover of the staircase complement by boxes, one per selector tuple in
/// {0..m-1}^l, with empty boxes dropped and duplicates removed. With
/// `minimize` (the default) boxes contained in another box are removed as
/// well; the union over any grid is unchanged either way. The result is
/// sorted deterministically.
inline std::vector<BoxSpec> box_cover(const MonomialIdeal& ideal, bool minimize = true) {
    const std::size_t l = ideal.generators().size();
    const std::size_t m = ideal.dimension();
    if (l == 0) throw PreconditionError("box_cover: the zero ideal has no cover construction");

    std::uint64_t tuples = 1;
    for (std::size_t i = 0; i < l; ++i) {
        tuples *= m;
        check_budget(tuples, "box_cover");
    }

    std::vector<BoxSpec> boxes;
    std::vector<std::size_t> tuple(l, 0);
    while (true) {
        BoxSpec b = box_from_tuple(ideal, tuple);
        if (!b.is_empty()) boxes.push_back(std::move(b));
        std::size_t i = l;
        bool advanced = false;
        while (i > 0) {
            --i;
            if (tuple[i] + 1 < m) {
                ++tuple[i];
                for (std::size_t j = i + 1; j < l; ++j) tuple[j] = 0;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }

    std::sort(boxes.begin(), boxes.end());
    boxes.erase(std::unique(boxes.begin(), boxes.end()), boxes.end());

    if (minimize) {
        std::vector<BoxSpec> kept;
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < boxes.size() && !dominated; ++j)
                dominated = i != j && box_subset(boxes[i], boxes[j]);
            if (!dominated) kept.push_back(boxes[i]);
        }
        boxes = std::move(kept);
    }
    return boxes;
}

} // namespace bergbox
