#pragma once

#include <cstdint>
#include <iosfwd>

#include "packed.hpp"

namespace srank {

/// Table from a packed group of `group_len` values (each `value_bits` wide,
/// first value in the low bits) to the group's sum. Masking the key's high
/// bits turns a probe into a prefix sum of the group.
class SumTable {
public:
    SumTable() = default;
    SumTable(unsigned value_bits, std::uint64_t group_len, std::uint64_t max_value);

    /// Sum of `count` consecutive values of `raw` starting at index `first`,
    /// one probe per group_len values.
    std::uint64_t sum(const PackedArray& raw, std::uint64_t first, std::uint64_t count,
                      unsigned* probes = nullptr) const {
        std::uint64_t s = 0;
        while (count > 0) {
            const std::uint64_t take = count < group_len_ ? count : group_len_;
            s += table_.get(raw.get_bits(first * value_bits_, static_cast<unsigned>(take * value_bits_)));
            if (probes) ++*probes;
            first += take;
            count -= take;
        }
        return s;
    }

    std::uint64_t group_len() const noexcept { return group_len_; }
    std::uint64_t payload_bits() const noexcept { return table_.payload_bits(); }

    friend bool operator==(const SumTable&, const SumTable&) = default;

private:
    unsigned value_bits_ = 1;
    std::uint64_t group_len_ = 1;
    PackedArray table_;
};

} // namespace srank
