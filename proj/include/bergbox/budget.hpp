#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "bergbox/errors.hpp"

namespace bergbox {

/// Work budget shared by every resource guard. Guards measure work in
/// "items": multi-indices enumerated, cover tuples visited, complex
/// summands built. The environment variable BERGBOX_BUDGET overrides the
/// default. Read once; the value is fixed for the lifetime of the process.
inline std::uint64_t work_budget() {
    static const std::uint64_t value = [] {
        if (const char* s = std::getenv("BERGBOX_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(s, &end, 10);
            if (end != s && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t{200'000'000};
    }();
    return value;
}

inline void check_budget(std::uint64_t items, const char* what) {
    if (items > work_budget())
        throw ResourceError(std::string(what) + ": " + std::to_string(items) +
                            " items exceed budget " + std::to_string(work_budget()) +
                            " (set BERGBOX_BUDGET to override)");
}

} // namespace bergbox
