#pragma once

#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace srank::cli {

/// Failure to open, read or write a file.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { Text, Binary };

Format parse_format(const std::string& name);

/// Pulls values in [0, ell] from text (one decimal per line) or binary
/// (little-endian u64) input. Errors name the 1-based line or value index.
class ValueReader {
public:
    ValueReader(std::istream& in, Format format, std::uint64_t ell);

    /// False at a clean end of input.
    bool next(std::uint64_t& v);
    /// Values returned so far.
    std::uint64_t count() const noexcept { return count_; }

private:
    std::string where() const;

    std::istream& in_;
    Format format_;
    std::uint64_t ell_;
    std::uint64_t count_ = 0;
    std::uint64_t line_ = 0;
};

/// Opened input; "-" is standard input.
class InputFile {
public:
    explicit InputFile(const std::string& path, Format format);
    std::istream& stream() noexcept { return *in_; }

private:
    std::unique_ptr<std::ifstream> file_;
    std::istream* in_;
};

/// Reads exactly `n` values, or everything when n is 0.
std::vector<std::uint64_t> read_values(const std::string& path, Format format,
                                       std::uint64_t ell, std::uint64_t n = 0);

} // namespace srank::cli
