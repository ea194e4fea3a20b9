#include "source.hpp"

#include <charconv>
#include <iostream>

#include "succinct_rank/errors.hpp"

namespace srank::cli {

Format parse_format(const std::string& name) {
    if (name == "text") return Format::Text;
    if (name == "binary") return Format::Binary;
    throw ValidationError("unknown format '" + name + "' (text or binary)");
}

ValueReader::ValueReader(std::istream& in, Format format, std::uint64_t ell)
    : in_(in), format_(format), ell_(ell) {}

std::string ValueReader::where() const {
    return format_ == Format::Text ? "line " + std::to_string(line_)
                                   : "value " + std::to_string(count_ + 1);
}

bool ValueReader::next(std::uint64_t& v) {
    if (format_ == Format::Binary) {
        unsigned char buf[8];
        in_.read(reinterpret_cast<char*>(buf), 8);
        const auto got = in_.gcount();
        if (got == 0) {
            if (in_.bad()) throw IoError("read failed at " + where());
            return false;
        }
        if (got != 8) throw FormatError(where() + ": truncated 8-byte value");
        v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
    } else {
        std::string line;
        for (;;) {
            if (!std::getline(in_, line)) {
                if (in_.bad()) throw IoError("read failed after " + where());
                return false;
            }
            ++line_;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;  // blank line
            const auto last = line.find_last_not_of(" \t\r");
            const char* b = line.data() + first;
            const char* e = line.data() + last + 1;
            const auto [p, ec] = std::from_chars(b, e, v);
            if (ec != std::errc{} || p != e) {
                throw ValidationError(where() + ": '" + std::string(b, e) +
                                      "' is not a non-negative integer");
            }
            break;
        }
    }
    if (v > ell_) {
        throw ValidationError(where() + ": value " + std::to_string(v) + " exceeds ell = " +
                              std::to_string(ell_));
    }
    ++count_;
    return true;
}

InputFile::InputFile(const std::string& path, Format format) : in_(&std::cin) {
    if (path == "-") return;
    auto mode = std::ios::in;
    if (format == Format::Binary) mode |= std::ios::binary;
    file_ = std::make_unique<std::ifstream>(path, mode);
    if (!*file_) throw IoError("cannot open " + path);
    in_ = file_.get();
}

std::vector<std::uint64_t> read_values(const std::string& path, Format format,
                                       std::uint64_t ell, std::uint64_t n) {
    InputFile file(path, format);
    ValueReader reader(file.stream(), format, ell);
    std::vector<std::uint64_t> out;
    std::uint64_t v = 0;
    while ((n == 0 || out.size() < n) && reader.next(v)) out.push_back(v);
    if (n != 0 && out.size() < n) {
        throw ValidationError("input has " + std::to_string(out.size()) + " values, need " +
                              std::to_string(n));
    }
    return out;
}

} // namespace srank::cli
