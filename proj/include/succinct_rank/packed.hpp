#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace srank {

/// Fixed-width unsigned integers packed back to back into 64-bit words.
///
/// Entry i occupies bits [i*width, (i+1)*width) of the little-endian word
/// sequence, so an entry touches at most two words. Writes that do not fit
/// the declared width are rejected instead of truncated.
class PackedArray {
public:
    static constexpr unsigned kHeaderBits = 32 + 64;

    PackedArray() = default;
    PackedArray(unsigned width_bits, std::size_t len);

    std::uint64_t get(std::size_t i) const {
        if (i >= len_) throw_index(i);
        return get_unchecked(i);
    }
    void set(std::size_t i, std::uint64_t v);

    /// Reads `nbits` (<= 64) raw bits starting at absolute bit position `bit`.
    std::uint64_t get_bits(std::uint64_t bit, unsigned nbits) const {
        if (nbits == 0) return 0;
        if (nbits > 64 || bit + nbits > payload_bits()) throw_bit_range();
        return read_bits(bit, nbits);
    }

    unsigned width() const noexcept { return width_; }
    std::size_t size() const noexcept { return len_; }
    std::uint64_t max_value() const noexcept { return mask_; }

    std::uint64_t payload_bits() const noexcept {
        return static_cast<std::uint64_t>(len_) * width_;
    }
    /// Payload plus word-alignment padding plus the serialized header fields.
    std::uint64_t total_bits() const noexcept {
        return static_cast<std::uint64_t>(words_.size()) * 64 + kHeaderBits;
    }

    void write(std::ostream& out) const;
    static PackedArray read(std::istream& in);

    friend bool operator==(const PackedArray&, const PackedArray&) = default;

private:
    [[noreturn]] void throw_index(std::size_t i) const;
    [[noreturn]] static void throw_bit_range();

    std::uint64_t read_bits(std::uint64_t bit, unsigned nbits) const noexcept {
        const std::size_t word = static_cast<std::size_t>(bit >> 6);
        const unsigned off = static_cast<unsigned>(bit & 63);
        std::uint64_t v = words_[word] >> off;
        if (off + nbits > 64) v |= words_[word + 1] << (64 - off);
        return nbits >= 64 ? v : v & ((std::uint64_t{1} << nbits) - 1);
    }
    std::uint64_t get_unchecked(std::size_t i) const noexcept {
        return read_bits(static_cast<std::uint64_t>(i) * width_, width_);
    }

    unsigned width_ = 1;
    std::uint64_t mask_ = 1;
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Circular buffer over a PackedArray addressed by age: at(0) is the most
/// recent push, at(k) the value pushed k pushes earlier. Slots that were never
/// written read as 0.
class PackedRing {
public:
    PackedRing() = default;
    PackedRing(unsigned width_bits, std::size_t len) : inner_(width_bits, len) {}

    void push(std::uint64_t v);
    std::uint64_t at(std::size_t age) const {
        if (age >= inner_.size()) throw_age(age);
        return inner_.get(slot_of_age(age));
    }

    /// Physical slot holding the entry of the given age.
    std::size_t slot_of_age(std::size_t age) const noexcept {
        const std::size_t n = inner_.size();
        const std::size_t back = age + 1;  // head_ - back, wrapped; back <= n
        return head_ >= back ? head_ - back : head_ + n - back;
    }
    std::size_t head() const noexcept { return head_; }
    std::size_t size() const noexcept { return inner_.size(); }
    const PackedArray& storage() const noexcept { return inner_; }

    std::uint64_t payload_bits() const noexcept { return inner_.payload_bits(); }
    std::uint64_t total_bits() const noexcept { return inner_.total_bits() + 64; }

    void write(std::ostream& out) const;
    static PackedRing read(std::istream& in);

    friend bool operator==(const PackedRing&, const PackedRing&) = default;

private:
    [[noreturn]] void throw_age(std::size_t age) const;

    PackedArray inner_;
    std::size_t head_ = 0;
};

/// Bits needed to store every value in [0, max_value]; at least 1.
unsigned bits_for(std::uint64_t max_value) noexcept;

} // namespace srank
