#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>

namespace zetalab {

/// A point s = sigma + i t. Every public entry point rejects non-finite values.
using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Throws DomainError if either component of s is NaN or infinite.
void require_finite(Complex s, std::string_view what = "s");

/// Exact non-negative rational r/q in lowest terms (q > 0).
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den);

    /// Parses "r/q" (or a bare integer "r"). Decimal notation is rejected.
    static Rational parse(std::string_view text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    /// 1 - r/q, computed exactly before rounding.
    double complement() const { return static_cast<double>(den_ - num_) / static_cast<double>(den_); }
    std::string str() const;

    friend bool operator==(const Rational&, const Rational&) = default;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::int64_t gcd64(std::int64_t a, std::int64_t b);

/// Parses "a+bi", "a-bi", "a", "bi" (whitespace ignored).
Complex parse_complex(std::string_view text);

}  // namespace zetalab
