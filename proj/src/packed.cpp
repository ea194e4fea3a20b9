#include "succinct_rank/packed.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>

#include "succinct_rank/errors.hpp"
#include "succinct_rank/io.hpp"

namespace srank {

namespace {

std::uint64_t low_mask(unsigned bits) noexcept {
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

} // namespace

unsigned bits_for(std::uint64_t max_value) noexcept {
    return max_value == 0 ? 1u : static_cast<unsigned>(std::bit_width(max_value));
}

PackedArray::PackedArray(unsigned width_bits, std::size_t len)
    : width_(width_bits), mask_(low_mask(width_bits)), len_(len) {
    if (width_bits < 1 || width_bits > 64) {
        throw ValidationError("packed width must be in [1, 64], got " +
                              std::to_string(width_bits));
    }
    if (len > std::numeric_limits<std::size_t>::max() / 64) {
        throw CapacityError("packed array too long");
    }
    const std::uint64_t bits = static_cast<std::uint64_t>(len) * width_bits;
    words_.assign(static_cast<std::size_t>((bits + 63) / 64), 0);
}

void PackedArray::throw_index(std::size_t i) const {
    throw std::out_of_range("packed index " + std::to_string(i) + " out of range for length " +
                            std::to_string(len_));
}

void PackedArray::throw_bit_range() { throw std::out_of_range("bit range out of packed payload"); }

void PackedArray::set(std::size_t i, std::uint64_t v) {
    if (i >= len_) {
        throw std::out_of_range("packed index " + std::to_string(i) +
                                " out of range for length " + std::to_string(len_));
    }
    if (v > mask_) {
        throw ValidationError("value " + std::to_string(v) + " does not fit in " +
                              std::to_string(width_) + " bits");
    }
    const std::uint64_t bit = static_cast<std::uint64_t>(i) * width_;
    const std::size_t word = static_cast<std::size_t>(bit >> 6);
    const unsigned off = static_cast<unsigned>(bit & 63);
    words_[word] = (words_[word] & ~(mask_ << off)) | (v << off);
    if (off + width_ > 64) {
        const unsigned spill = off + width_ - 64;
        const std::uint64_t hi_mask = low_mask(spill);
        words_[word + 1] = (words_[word + 1] & ~hi_mask) | (v >> (64 - off));
    }
}

void PackedArray::write(std::ostream& out) const {
    io::write_u32(out, width_);
    io::write_u64(out, len_);
    for (std::uint64_t w : words_) io::write_u64(out, w);
}

PackedArray PackedArray::read(std::istream& in) {
    const std::uint32_t width = io::read_u32(in);
    const std::uint64_t len = io::read_u64(in);
    if (width < 1 || width > 64) throw FormatError("corrupt packed header: width");
    if (len > (std::uint64_t{1} << 40)) throw FormatError("corrupt packed header: length");
    PackedArray a(width, 0);
    a.len_ = static_cast<std::size_t>(len);
    const std::uint64_t nwords = (len * width + 63) / 64;
    // Grow while reading so a lying header fails on EOF, not on allocation.
    for (std::uint64_t k = 0; k < nwords; ++k) a.words_.push_back(io::read_u64(in));
    // Reject set bits beyond the payload so equal payloads compare equal.
    const std::uint64_t used = a.payload_bits() & 63;
    if (used != 0 && !a.words_.empty() && (a.words_.back() >> used) != 0) {
        throw FormatError("corrupt packed payload: padding bits set");
    }
    return a;
}

void PackedRing::push(std::uint64_t v) {
    if (inner_.size() == 0) throw ValidationError("push into empty ring");
    inner_.set(head_, v);
    head_ = (head_ + 1) % inner_.size();
}

void PackedRing::throw_age(std::size_t age) const {
    throw std::out_of_range("ring age " + std::to_string(age) + " exceeds capacity " +
                            std::to_string(inner_.size()));
}

void PackedRing::write(std::ostream& out) const {
    inner_.write(out);
    io::write_u64(out, head_);
}

PackedRing PackedRing::read(std::istream& in) {
    PackedRing r;
    r.inner_ = PackedArray::read(in);
    const std::uint64_t head = io::read_u64(in);
    if (head >= std::max<std::size_t>(r.inner_.size(), 1)) {
        throw FormatError("corrupt ring head");
    }
    r.head_ = static_cast<std::size_t>(head);
    return r;
}

} // namespace srank
