#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "bergbox/errors.hpp"

namespace bergbox {

/// Exact rational on 64-bit numerator/denominator, always reduced with a
/// positive denominator. Arithmetic goes through 128-bit intermediates and
/// throws on overflow rather than wrapping; exactness checks never degrade
/// silently.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { reduce(); }

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    Rational operator+(const Rational& o) const {
        return from128(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                       static_cast<__int128>(den_) * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return from128(static_cast<__int128>(num_) * o.den_ - static_cast<__int128>(o.num_) * den_,
                       static_cast<__int128>(den_) * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return from128(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw DomainError("Rational: division by zero");
        return from128(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
    }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }

    std::string to_string() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational from128(__int128 n, __int128 d) {
        if (d == 0) throw DomainError("Rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n != 0) {
            __int128 g = gcd128(n, d);
            n /= g;
            d /= g;
        } else {
            d = 1;
        }
        constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            throw ResourceError("Rational: 64-bit overflow during exact arithmetic");
        Rational r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }

    void reduce() { *this = from128(num_, den_); }

    long long num_ = 0;
    long long den_ = 1;
};

/// Rank over Q of an integer matrix, by Gaussian elimination on exact
/// rationals. Unit pivots are preferred; signed incidence matrices then
/// eliminate with almost no coefficient growth.
inline std::size_t rational_rank(const std::vector<std::vector<long long>>& matrix) {
    const std::size_t rows = matrix.size();
    if (rows == 0) return 0;
    const std::size_t cols = matrix.front().size();
    for (const auto& r : matrix)
        if (r.size() != cols) throw DimensionError("rational_rank: ragged matrix");

    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = Rational(matrix[i][j]);

    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rows;
        for (std::size_t r = rank; r < rows; ++r) {
            if (a[r][col].is_zero()) continue;
            if (pivot == rows) pivot = r;
            if (std::llabs(a[r][col].num()) == 1 && a[r][col].den() == 1) {
                pivot = r;
                break;
            }
        }
        if (pivot == rows) continue;
        std::swap(a[rank], a[pivot]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a[r][col].is_zero()) continue;
            const Rational f = a[r][col] / a[rank][col];
            for (std::size_t j = col; j < cols; ++j) a[r][j] = a[r][j] - f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

} // namespace bergbox
