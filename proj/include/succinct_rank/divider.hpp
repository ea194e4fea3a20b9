#pragma once

#include <cstdint>

namespace srank {

/// Division of 64-bit values by a divisor fixed at construction, done as a
/// multiply by the 128-bit reciprocal ceil(2^128 / d). Exact for every
/// dividend below 2^64.
class Divider {
public:
    Divider() = default;
    explicit Divider(std::uint64_t d) : d_(d), m_(d > 1 ? ~u128{0} / d + 1 : 0) {}

    std::uint64_t divisor() const noexcept { return d_; }

    std::uint64_t div(std::uint64_t a) const noexcept {
        if (m_ == 0) return a;  // d = 1
        const u128 lo = static_cast<u128>(static_cast<std::uint64_t>(m_)) * a;
        const u128 hi = static_cast<u128>(static_cast<std::uint64_t>(m_ >> 64)) * a;
        return static_cast<std::uint64_t>((hi + (lo >> 64)) >> 64);
    }
    std::uint64_t mod(std::uint64_t a) const noexcept { return a - div(a) * d_; }

    friend bool operator==(const Divider&, const Divider&) = default;

private:
    using u128 = unsigned __int128;
    std::uint64_t d_ = 1;
    u128 m_ = 0;
};

} // namespace srank
