#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "bounds.hpp"
#include "estimate.hpp"
#include "exact_sliding.hpp"

namespace srank {

/// Which case of the estimator produced a query answer.
enum class QueryBranch : std::uint8_t {
    Exact,        // no approximation: delta = 1, sens <= 1 or n < 4
    Empty,        // i = 0
    InBlock,      // the window lies inside the current, unfinished block
    SingleBlock,  // blocks of one element, so no block is cut by the window
    LastZero,     // oldest touched block was stored as 0
    LastOne,      // oldest touched block was stored as 1 or more
};

std::string_view to_string(QueryBranch b) noexcept;

struct QueryTrace {
    QueryBranch branch = QueryBranch::Exact;
    unsigned probes = 0;  // inner structure queries
};

struct SlidingOptions {
    /// Allow windows longer than the ingested stream, padding with zeros.
    bool permissive = false;
    /// Layout overrides for the inner exact sliding ranker.
    BuildOptions inner;
};

/// Sliding-window ranker whose answers are off by strictly less than delta:
/// for 1 <= i <= n, S_i - delta < query(i) < S_i where S_i is the sum of the
/// last i values.
///
/// Values are rounded down to multiples of ell/2^b and added to a remainder
/// r kept as the exact integer r*2^b. Every nu values, floor(r / sens) is
/// moved into an inner exact sliding ranker over windows of s blocks.
class ApproxSlidingRanker {
public:
    ApproxSlidingRanker() = default;
    ApproxSlidingRanker(const Params& p, const SlidingOptions& opts = {});

    void add(std::uint64_t x);

    Estimate query(std::uint64_t i, QueryTrace* trace = nullptr) const;

    /// Estimate of the sum of the values that arrived between window
    /// offsets t2 < t1, i.e. query(t1) - query(t2); the error is within
    /// (-delta, delta).
    Estimate interval(std::uint64_t t1, std::uint64_t t2) const;

    const Params& params() const noexcept { return params_; }
    /// Meaningful only when !is_exact().
    const SlidingDerived& derived() const noexcept { return derived_; }
    bool is_exact() const noexcept { return exact_mode_; }
    bool permissive() const noexcept { return permissive_; }
    std::uint64_t count() const noexcept { return count_; }
    std::uint64_t offset() const noexcept { return offset_; }

    /// r * 2^b, and the same value at the start of the current block.
    unsigned __int128 remainder_scaled() const noexcept { return r_scaled_; }
    unsigned __int128 block_start_remainder_scaled() const noexcept { return r0_scaled_; }
    /// Block value extracted by the most recent block end.
    std::uint64_t last_extracted() const noexcept { return last_y_; }
    const ExactSlidingRanker& inner() const noexcept { return inner_; }

    /// ell * floor(x * 2^b / ell), the rounded value in units of 2^-b.
    static unsigned __int128 round_scaled(std::uint64_t x, std::uint64_t b, std::uint64_t ell);

    /// Width of the remainder field, bits for values below (sens + nu*ell) * 2^b.
    unsigned remainder_bits() const noexcept;
    /// Width of the block offset field, ceil(log2 nu).
    unsigned offset_bits() const noexcept;
    std::uint64_t payload_bits() const noexcept;
    /// payload_bits over the lower bound (over n log2(ell+1) when exact).
    double bits_ratio() const;

    void save(std::ostream& out) const;
    static ApproxSlidingRanker load(std::istream& in);

    friend bool operator==(const ApproxSlidingRanker&, const ApproxSlidingRanker&) = default;

private:
    Params params_;
    SlidingDerived derived_;
    Divider nu_div_;
    bool exact_mode_ = false;
    bool permissive_ = false;
    ExactSlidingRanker inner_;  // over blocks, or over raw values in exact mode
    unsigned __int128 r_scaled_ = 0;
    unsigned __int128 r0_scaled_ = 0;
    std::uint64_t offset_ = 0;
    std::uint64_t count_ = 0;
    std::uint64_t last_y_ = 0;
};

} // namespace srank
