#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string_view>

#include "errors.hpp"

// Little-endian primitives shared by every serializer.
namespace srank::io {

inline void write_u64(std::ostream& out, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 8);
    if (!out) throw FormatError("write failed");
}

inline void write_u32(std::ostream& out, std::uint32_t v) {
    char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 4);
    if (!out) throw FormatError("write failed");
}

inline std::uint64_t read_u64(std::istream& in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    if (in.gcount() != 8) throw FormatError("unexpected end of data");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
    return v;
}

inline std::uint32_t read_u32(std::istream& in) {
    unsigned char buf[4];
    in.read(reinterpret_cast<char*>(buf), 4);
    if (in.gcount() != 4) throw FormatError("unexpected end of data");
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | buf[i];
    return v;
}

// 128-bit signed values travel as two words, low word first.
inline void write_i128(std::ostream& out, __int128 v) {
    auto u = static_cast<unsigned __int128>(v);
    write_u64(out, static_cast<std::uint64_t>(u));
    write_u64(out, static_cast<std::uint64_t>(u >> 64));
}

inline __int128 read_i128(std::istream& in) {
    unsigned __int128 lo = read_u64(in);
    unsigned __int128 hi = read_u64(in);
    return static_cast<__int128>(lo | (hi << 64));
}

inline void write_tag(std::ostream& out, std::string_view tag) {
    out.write(tag.data(), static_cast<std::streamsize>(tag.size()));
    if (!out) throw FormatError("write failed");
}

inline void expect_tag(std::istream& in, std::string_view tag) {
    char buf[16] = {};
    in.read(buf, static_cast<std::streamsize>(tag.size()));
    if (in.gcount() != static_cast<std::streamsize>(tag.size()) ||
        std::string_view(buf, tag.size()) != tag) {
        throw FormatError("bad magic, expected " + std::string(tag));
    }
}

} // namespace srank::io
