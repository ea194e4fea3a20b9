#include "succinct_rank/sum_table.hpp"

#include <algorithm>

#include "succinct_rank/errors.hpp"
#include "succinct_rank/layout.hpp"

namespace srank {

SumTable::SumTable(unsigned value_bits, std::uint64_t group_len, std::uint64_t max_value)
    : value_bits_(value_bits), group_len_(group_len) {
    const std::uint64_t key_bits = value_bits * group_len;
    if (group_len == 0 || key_bits > kMaxTableKeyBits) {
        throw ValidationError("lookup table key too wide");
    }
    const std::uint64_t entries = std::uint64_t{1} << key_bits;
    const std::uint64_t value_mask = (std::uint64_t{1} << value_bits) - 1;
    table_ = PackedArray(bits_for(max_value * group_len), entries);
    for (std::uint64_t key = 0; key < entries; ++key) {
        std::uint64_t s = 0;
        for (std::uint64_t j = 0; j < group_len; ++j) {
            s += std::min((key >> (j * value_bits)) & value_mask, max_value);
        }
        table_.set(key, s);
    }
}

} // namespace srank
