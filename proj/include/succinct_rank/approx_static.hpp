#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>

#include "bounds.hpp"
#include "estimate.hpp"
#include "exact_static.hpp"

namespace srank {

/// Static ranker whose answers are off by strictly less than delta.
///
/// x is cut into blocks of nu elements counted from the end; block k
/// (k = 1 is the last block) is stored as
///   y_k = floor(T_k / delta) - floor(T_{k-1} / delta),
/// where T_k is the sum of the last nu*k elements. When nu does not divide
/// n the first n mod nu elements form a final short block, so the blocks
/// cover all of x and the remainder r = sum(x) mod delta. y lives in an exact
/// ranker R (inner position k holds y_k).
///
/// query(i) is a half-integer Q with S_i - delta < Q < S_i for i >= 1;
/// query(0) is -1/2. delta = 1 stores x exactly.
class ApproxStaticRanker {
public:
    ApproxStaticRanker() = default;

    /// n is x.size(); requires 1 <= delta <= ell*n.
    static ApproxStaticRanker build(std::span<const std::uint64_t> x, std::uint64_t ell,
                                    std::uint64_t delta, const BuildOptions& inner_opts = {});

    /// `probes`, if given, receives the number of inner queries (at most 3).
    Estimate query(std::uint64_t i, unsigned* probes = nullptr) const;

    const Params& params() const noexcept { return params_; }
    const StaticDerived& derived() const noexcept { return derived_; }
    bool is_exact() const noexcept { return params_.delta == 1; }

    /// Number of stored blocks (ceil(n/nu); n in exact mode).
    std::uint64_t blocks() const noexcept { return has_inner_ ? inner_.size() : 0; }
    /// y_k for k in [1, blocks()].
    std::uint64_t block_value(std::uint64_t k) const;
    std::uint64_t remainder() const noexcept { return rem_; }
    const ExactStaticRanker& inner() const noexcept { return inner_; }

    /// Bits of the remainder field, ceil(log2(delta)).
    unsigned remainder_bits() const noexcept;
    std::uint64_t payload_bits() const noexcept;
    /// payload_bits over the lower bound (over n log2(ell+1) when exact).
    double bits_ratio() const;

    void save(std::ostream& out) const;
    static ApproxStaticRanker load(std::istream& in);

    friend bool operator==(const ApproxStaticRanker&, const ApproxStaticRanker&) = default;

private:
    std::uint64_t inner_prefix(std::uint64_t j, unsigned* probes) const;

    Params params_;
    StaticDerived derived_;
    Divider nu_div_;
    bool has_inner_ = false;
    ExactStaticRanker inner_;
    std::uint64_t rem_ = 0;
};

} // namespace srank
