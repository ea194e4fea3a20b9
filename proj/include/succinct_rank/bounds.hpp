#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace srank {

/// Problem parameters: values lie in [0, ell], the sequence (or window) has
/// length n and answers may be off by strictly less than delta.
struct Params {
    std::uint64_t ell = 1;
    std::uint64_t n = 1;
    std::uint64_t delta = 1;

    friend bool operator==(const Params&, const Params&) = default;
};

/// Throws ValidationError unless ell, n, delta >= 1, delta <= ell*n and
/// ell*n fits in 64 bits.
void validate(const Params& p);

/// Block parameters of the static approximate ranker.
struct StaticDerived {
    std::uint64_t mu_num = 0;  // mu = delta / ell, kept as a fraction
    std::uint64_t mu_den = 1;
    std::uint64_t nu = 1;      // elements per block, max(floor(mu), 1)
    std::uint64_t s = 0;       // number of blocks, floor(n / nu)
    std::uint64_t z = 0;       // floor(nu * ell / delta)
    std::uint64_t z_cap = 0;   // ceil(nu * ell / delta), the true block-value bound

    friend bool operator==(const StaticDerived&, const StaticDerived&) = default;
};

/// Parameters of the sliding approximate ranker.
struct SlidingDerived {
    std::uint64_t b = 1;       // rounding bits
    std::uint64_t sens = 0;    // floor(delta * (1 - 1/log2 n))
    std::uint64_t nu = 1;      // max(floor(mu * (1 - 1/log2 n)), 1)
    std::uint64_t s = 1;       // ceil(n / nu), inner window
    std::uint64_t z_cap = 0;   // floor((sens - 1 + nu*ell) / sens)
    bool exact_fallback = false;  // sens <= 1: run the exact sliding ranker

    friend bool operator==(const SlidingDerived&, const SlidingDerived&) = default;
};

StaticDerived derive_static(const Params& p);

/// Requires n >= 4. Logarithms are evaluated with ~160-bit binary floats and
/// every derived field is an exact integer.
SlidingDerived derive_sliding(const Params& p);

/// Bits any deterministic approximate ranker needs; requires 2 <= delta <= ell*n.
double lower_bound_bits(const Params& p);

/// n * log2(ell + 1): the cost of storing the sequence itself.
double exact_bound_bits(std::uint64_t ell, std::uint64_t n);

// Brute-force references used by the property tests and the verifier.
std::uint64_t oracle_prefix_sum(std::span<const std::uint64_t> x, std::size_t i);
std::uint64_t oracle_window_sum(std::span<const std::uint64_t> stream, std::size_t i);

/// The first `count` members (lexicographic over block symbols) of the
/// family used in the lower-bound argument: floor(n / ceil(mu)) blocks, each
/// repeating one symbol of {min(delta*k, ell)} ceil(mu) times, zero padded.
std::vector<std::vector<std::uint64_t>> adversarial_inputs(const Params& p,
                                                           std::size_t count);

/// Block length ceil(mu) of the adversarial family.
std::uint64_t adversarial_block_len(const Params& p);

} // namespace srank
