#include "succinct_rank/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "succinct_rank/errors.hpp"

namespace srank {

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;

std::uint64_t floor_real(const Real& v) {
    using boost::multiprecision::floor;
    return floor(v).convert_to<std::uint64_t>();
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return a / b + (a % b != 0); }

bool is_pow2(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

} // namespace

void validate(const Params& p) {
    if (p.ell == 0) throw ValidationError("ell must be positive");
    if (p.n == 0) throw ValidationError("n must be positive");
    if (p.delta == 0) throw ValidationError("delta must be positive");
    std::uint64_t prod = 0;
    if (__builtin_mul_overflow(p.ell, p.n, &prod) || prod == ~std::uint64_t{0}) {
        throw CapacityError("ell * n does not fit in 64-bit arithmetic");
    }
    if (p.delta > prod) {
        throw ValidationError("delta " + std::to_string(p.delta) + " exceeds ell*n = " +
                              std::to_string(prod));
    }
}

StaticDerived derive_static(const Params& p) {
    validate(p);
    StaticDerived d;
    d.mu_num = p.delta;
    d.mu_den = p.ell;
    d.nu = std::max<std::uint64_t>(p.delta / p.ell, 1);
    d.s = p.n / d.nu;
    // nu*ell <= max(delta, ell), so the product cannot overflow.
    const std::uint64_t block_max = d.nu * p.ell;
    d.z = block_max / p.delta;
    d.z_cap = ceil_div(block_max, p.delta);
    return d;
}

SlidingDerived derive_sliding(const Params& p) {
    validate(p);
    if (p.n < 4) throw ValidationError("sliding approximation needs n >= 4");
    SlidingDerived d;

    if (is_pow2(p.n)) {
        // log2 n is the integer L: everything is rational, use integers.
        using u128 = unsigned __int128;
        const std::uint64_t L = static_cast<std::uint64_t>(std::bit_width(p.n) - 1);
        const u128 kept = static_cast<u128>(p.delta) * (L - 1);
        d.sens = static_cast<std::uint64_t>(kept / L);
        d.nu = std::max<std::uint64_t>(static_cast<std::uint64_t>(kept / (static_cast<u128>(L) * p.ell)), 1);
        const u128 num = static_cast<u128>(p.n) * p.ell * L;
        const u128 target = num / p.delta + (num % p.delta != 0);
        std::uint64_t b = 0;
        while ((static_cast<u128>(1) << b) < target) ++b;
        d.b = b;
    } else {
        // log2 n is irrational, so none of the floors/ceils below sits on a
        // tie; 160 bits of precision keep us on the right side of it.
        const Real log_n = boost::multiprecision::log2(Real(p.n));
        const Real kept = Real(p.delta) * (Real(1) - Real(1) / log_n);
        d.sens = floor_real(kept);
        d.nu = std::max<std::uint64_t>(floor_real(kept / Real(p.ell)), 1);
        const Real target = Real(p.n) * Real(p.ell) * log_n / Real(p.delta);
        std::uint64_t b = 0;
        while (boost::multiprecision::ldexp(Real(1), static_cast<int>(b)) < target) ++b;
        d.b = b;
    }
    d.b = std::max<std::uint64_t>(d.b, 1);
    d.s = ceil_div(p.n, d.nu);

    d.exact_fallback = d.sens <= 1;
    if (!d.exact_fallback) d.z_cap = (d.sens - 1 + d.nu * p.ell) / d.sens;
    return d;
}

double lower_bound_bits(const Params& p) {
    validate(p);
    if (p.delta < 2) throw ValidationError("lower bound is defined for delta >= 2");
    const std::uint64_t block = ceil_div(p.delta, p.ell);
    const std::uint64_t levels = std::max<std::uint64_t>(p.ell / p.delta, 1);
    return static_cast<double>(p.n / block) * std::log2(static_cast<double>(levels) + 1.0);
}

double exact_bound_bits(std::uint64_t ell, std::uint64_t n) {
    return static_cast<double>(n) * std::log2(static_cast<double>(ell) + 1.0);
}

std::uint64_t oracle_prefix_sum(std::span<const std::uint64_t> x, std::size_t i) {
    if (i > x.size()) throw std::out_of_range("prefix length exceeds sequence");
    std::uint64_t sum = 0;
    for (std::size_t d = 0; d < i; ++d) sum += x[d];
    return sum;
}

std::uint64_t oracle_window_sum(std::span<const std::uint64_t> stream, std::size_t i) {
    if (i > stream.size()) throw std::out_of_range("window exceeds stream");
    std::uint64_t sum = 0;
    for (std::size_t d = stream.size() - i; d < stream.size(); ++d) sum += stream[d];
    return sum;
}

std::uint64_t adversarial_block_len(const Params& p) {
    validate(p);
    return ceil_div(p.delta, p.ell);
}

std::vector<std::vector<std::uint64_t>> adversarial_inputs(const Params& p,
                                                           std::size_t count) {
    const std::uint64_t block = adversarial_block_len(p);
    const std::uint64_t blocks = p.n / block;
    const std::uint64_t levels = std::max<std::uint64_t>(p.ell / p.delta, 1);

    std::vector<std::uint64_t> symbols;
    for (std::uint64_t k = 0; k <= levels; ++k) {
        std::uint64_t v = 0;
        if (__builtin_mul_overflow(p.delta, k, &v) || v > p.ell) v = p.ell;
        symbols.push_back(v);
    }

    std::vector<std::vector<std::uint64_t>> out;
    if (count == 0) return out;
    // Odometer over block digits, most significant block first.
    std::vector<std::size_t> digit(static_cast<std::size_t>(blocks), 0);
    for (;;) {
        std::vector<std::uint64_t> seq(static_cast<std::size_t>(p.n), 0);
        for (std::uint64_t j = 0; j < blocks; ++j) {
            std::fill_n(seq.begin() + static_cast<std::ptrdiff_t>(j * block),
                        static_cast<std::ptrdiff_t>(block), symbols[digit[j]]);
        }
        out.push_back(std::move(seq));
        if (out.size() == count) break;
        std::size_t pos = digit.size();
        while (pos > 0 && digit[pos - 1] + 1 == symbols.size()) digit[--pos] = 0;
        if (pos == 0) break;
        ++digit[pos - 1];
    }
    return out;
}

} // namespace srank
