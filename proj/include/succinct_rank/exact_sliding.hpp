#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>

#include "divider.hpp"
#include "layout.hpp"
#include "packed.hpp"
#include "sum_table.hpp"

namespace srank {

/// Exact sums of the last i <= n stream values, each in [0, ell], in O(1).
///
/// All sums are prefix sums of the whole stream taken modulo M = 2^w with
/// w = bits_for(ell*n); a window sum is then a difference of two prefixes,
/// which is exact because it never exceeds ell*n < M. Rings keep just enough
/// history to rebuild any prefix at most n elements old:
///   C  - prefix at each chunk end,
///   SC - sum from the chunk start to each sub-chunk end,
///   W  - per element, the sum from its sub-chunk start (Cumulative) or the
///        raw value (LookupTable, summed through a SumTable).
/// History before the first add reads as zeros.
class ExactSlidingRanker {
public:
    ExactSlidingRanker() = default;
    ExactSlidingRanker(std::uint64_t ell, std::uint64_t n, const BuildOptions& opts = {});

    void add(std::uint64_t x);

    /// Sum of the last i values, 0 <= i <= n; missing history counts as 0.
    /// `probes`, if given, is incremented once per table probe.
    std::uint64_t query(std::uint64_t i, unsigned* probes = nullptr) const;
    /// The value added `age` adds ago, age < n; 0 before the first add.
    std::uint64_t element(std::uint64_t age) const;

    std::uint64_t ell() const noexcept { return ell_; }
    std::uint64_t window() const noexcept { return n_; }
    std::uint64_t count() const noexcept { return count_; }
    /// Position of the most recent element within its frame of n elements.
    std::uint64_t ind() const noexcept { return n_ ? count_ % n_ : 0; }
    const Layout& layout() const noexcept { return layout_; }
    Strategy strategy() const noexcept { return layout_.strategy; }

    const PackedRing& chunk_ring() const noexcept { return c_; }
    const PackedRing& sub_ring() const noexcept { return sc_; }
    const PackedRing& element_ring() const noexcept { return w_; }
    std::uint64_t total() const noexcept { return total_; }

    /// Rings, table and running accumulators; the element counter is excluded.
    std::uint64_t payload_bits() const noexcept;
    /// payload_bits / (n log2(ell+1)).
    double bits_ratio() const;

    void save(std::ostream& out) const;
    static ExactSlidingRanker load(std::istream& in);

    friend bool operator==(const ExactSlidingRanker&, const ExactSlidingRanker&) = default;

private:
    // (width, slots) of each ring.
    struct Shapes {
        std::pair<unsigned, std::uint64_t> c, sc, w;
    };
    Shapes shapes() const;
    void allocate();

    std::uint64_t ell_ = 0;
    std::uint64_t n_ = 0;
    Layout layout_;
    Divider chunk_div_;  // by chunk_len
    Divider sub_div_;    // by sub_len
    unsigned prefix_bits_ = 1;
    std::uint64_t prefix_mask_ = 1;
    PackedRing c_;
    PackedRing sc_;
    PackedRing w_;
    SumTable table_;  // LookupTable only
    std::uint64_t total_ = 0;      // prefix of the whole stream, mod M
    std::uint64_t chunk_acc_ = 0;  // sum since the current chunk started
    std::uint64_t sub_acc_ = 0;    // sum since the current sub-chunk started
    std::uint64_t count_ = 0;
};

} // namespace srank
