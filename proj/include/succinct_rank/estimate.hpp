#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace srank {

/// Exact fixed-point number numerator / 2^frac_bits.
///
/// Query answers of the approximate rankers are half-integers or multiples
/// of 2^-b; carrying them exactly keeps the strict error guarantees checkable
/// without floating point.
class Estimate {
public:
    static constexpr unsigned kMaxFracBits = 120;

    constexpr Estimate() = default;
    Estimate(__int128 numerator, unsigned frac_bits);

    static Estimate from_integer(std::int64_t v) { return Estimate(v, 0); }

    __int128 numerator() const noexcept { return num_; }
    unsigned frac_bits() const noexcept { return frac_; }

    /// Same value with trailing zero bits of the fraction removed.
    Estimate normalized() const;

    /// Exact decimal expansion, e.g. "5.5", "-0.5", "31.25".
    std::string to_string() const;
    double to_double() const;

    /// Three-way comparison of exact values (frac_bits may differ).
    friend std::strong_ordering operator<=>(const Estimate& a, const Estimate& b);
    friend bool operator==(const Estimate& a, const Estimate& b) {
        return (a <=> b) == std::strong_ordering::equal;
    }
    friend std::strong_ordering operator<=>(const Estimate& a, std::int64_t v) {
        return a <=> from_integer(v);
    }
    friend bool operator==(const Estimate& a, std::int64_t v) {
        return (a <=> v) == std::strong_ordering::equal;
    }

    /// Exact difference; used for interval (drill-down) answers.
    friend Estimate operator-(const Estimate& a, const Estimate& b);

private:
    __int128 num_ = 0;
    unsigned frac_ = 0;
};

/// Decimal rendering of a 128-bit integer.
std::string to_string_i128(__int128 v);

} // namespace srank
