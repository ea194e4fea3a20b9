#include "succinct_rank/estimate.hpp"

#include <algorithm>
#include <cmath>

#include "succinct_rank/errors.hpp"

namespace srank {

namespace {

using u128 = unsigned __int128;

u128 magnitude(__int128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

// Shifts left checking that the value survives.
__int128 scale_up(__int128 v, unsigned by) {
    if (by == 0) return v;
    if (by >= 126 || (magnitude(v) >> (126 - by)) != 0) {
        throw CapacityError("estimate alignment overflows 128 bits");
    }
    return v * (__int128{1} << by);
}

} // namespace

std::string to_string_i128(__int128 v) {
    u128 m = magnitude(v);
    std::string digits;
    do {
        digits.push_back(static_cast<char>('0' + static_cast<int>(m % 10)));
        m /= 10;
    } while (m != 0);
    if (v < 0) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

Estimate::Estimate(__int128 numerator, unsigned frac_bits) : num_(numerator), frac_(frac_bits) {
    if (frac_bits > kMaxFracBits) throw ValidationError("estimate fraction too wide");
}

Estimate Estimate::normalized() const {
    Estimate e = *this;
    while (e.frac_ > 0 && (e.num_ & 1) == 0) {
        e.num_ /= 2;
        --e.frac_;
    }
    return e;
}

std::string Estimate::to_string() const {
    const Estimate e = normalized();
    const u128 m = magnitude(e.num_);
    const u128 int_part = m >> e.frac_;
    u128 frac = m - (int_part << e.frac_);
    std::string out = e.num_ < 0 ? "-" : "";
    out += to_string_i128(static_cast<__int128>(int_part));
    if (frac != 0) {
        out.push_back('.');
        // frac < 2^120, so frac*10 stays below 2^124.
        const u128 one = u128(1) << e.frac_;
        while (frac != 0) {
            frac *= 10;
            out.push_back(static_cast<char>('0' + static_cast<int>(frac >> e.frac_)));
            frac &= one - 1;
        }
    }
    return out;
}

double Estimate::to_double() const {
    return std::ldexp(static_cast<double>(num_), -static_cast<int>(frac_));
}

std::strong_ordering operator<=>(const Estimate& a, const Estimate& b) {
    const unsigned f = std::max(a.frac_, b.frac_);
    return scale_up(a.num_, f - a.frac_) <=> scale_up(b.num_, f - b.frac_);
}

Estimate operator-(const Estimate& a, const Estimate& b) {
    const unsigned f = std::max(a.frac_, b.frac_);
    return Estimate(scale_up(a.num_, f - a.frac_) - scale_up(b.num_, f - b.frac_), f);
}

} // namespace srank
