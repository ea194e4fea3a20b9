#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>

#include "divider.hpp"
#include "layout.hpp"
#include "packed.hpp"
#include "sum_table.hpp"

namespace srank {

/// Immutable exact prefix sums over x in [0, ell]^n with O(1) queries.
///
/// The sequence is cut into chunks, and chunks into sub-chunks. chunk_sums[j]
/// holds the sum of x up to the end of chunk j; sub_sums[k] holds the sum from
/// the start of the enclosing chunk up to the end of sub-chunk k. The rest of
/// a prefix lies inside one sub-chunk and comes either from the raw values via
/// a SumTable (LookupTable) or from the per-element running sum inside the
/// sub-chunk (Cumulative).
class ExactStaticRanker {
public:
    ExactStaticRanker() = default;

    static ExactStaticRanker build(std::span<const std::uint64_t> x, std::uint64_t ell,
                                   const BuildOptions& opts = {});

    /// Sum of the first i values; 0 <= i <= n.
    std::uint64_t query(std::uint64_t i) const;

    /// The value x[d] (0-based), recovered from the stored arrays.
    std::uint64_t element(std::uint64_t d) const;

    std::uint64_t ell() const noexcept { return ell_; }
    std::uint64_t size() const noexcept { return n_; }
    const Layout& layout() const noexcept { return layout_; }
    Strategy strategy() const noexcept { return layout_.strategy; }

    const PackedArray& chunk_sums() const noexcept { return chunk_sums_; }
    const PackedArray& sub_sums() const noexcept { return sub_sums_; }

    std::uint64_t payload_bits() const noexcept;
    /// payload_bits / (n log2(ell+1)).
    double bits_ratio() const;

    void save(std::ostream& out) const;
    static ExactStaticRanker load(std::istream& in);

    friend bool operator==(const ExactStaticRanker&, const ExactStaticRanker&) = default;

private:
    std::uint64_t ell_ = 0;
    std::uint64_t n_ = 0;
    Layout layout_;
    Divider chunk_div_;  // by chunk_len
    Divider sub_div_;    // by sub_len
    PackedArray chunk_sums_;
    PackedArray sub_sums_;
    PackedArray raw_;     // LookupTable only
    SumTable table_;      // LookupTable only
    PackedArray within_;  // Cumulative only
};

} // namespace srank
