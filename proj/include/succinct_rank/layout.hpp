#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace srank {

/// How sums inside a sub-chunk are recovered.
enum class Strategy : std::uint8_t {
    /// Raw values plus a table mapping packed value groups to their sums.
    LookupTable = 0,
    /// Per-element sums from the start of the element's sub-chunk.
    Cumulative = 1,
};

std::string_view to_string(Strategy s) noexcept;

/// Caller overrides for the automatic sizing; unset fields are chosen.
struct BuildOptions {
    std::optional<Strategy> strategy;
    std::optional<std::uint64_t> chunk_len;
    std::optional<std::uint64_t> sub_len;
    /// Values per table probe (LookupTable only).
    std::optional<std::uint64_t> group_len;
};

/// Chunk geometry shared by the static and sliding exact rankers.
struct Layout {
    std::uint64_t chunk_len = 1;   // elements per chunk, a multiple of sub_len
    std::uint64_t sub_len = 1;     // elements per sub-chunk
    Strategy strategy = Strategy::Cumulative;
    std::uint64_t group_len = 1;   // LookupTable: elements per table probe

    friend bool operator==(const Layout&, const Layout&) = default;
};

enum class LayoutTarget : std::uint8_t { Static, Sliding };

/// Upper bound on table probes per query for automatically chosen layouts.
inline constexpr std::uint64_t kMaxAutoProbes = 4;
/// Largest table key, in bits, ever materialized.
inline constexpr unsigned kMaxTableKeyBits = 20;
/// Limits on explicit chunk and sub-chunk lengths.
inline constexpr std::uint64_t kMaxChunkLen = std::uint64_t{1} << 40;
inline constexpr std::uint64_t kMaxSubLen = std::uint64_t{1} << 20;

/// Chooses the layout for `n` values in [0, ell].
///
/// With c = max(ceil(log2 n), 2) the chunk length starts at c^2 and table
/// keys range over ceil(c/2) to ceil(3c/4) bits. Every feasible candidate
/// (Cumulative with sub_len <= c, LookupTable with up to kMaxAutoProbes probes
/// of one key each) is costed in closed form and the smallest payload wins.
/// Overrides in `opts` pin the corresponding choice; invalid overrides throw.
/// Pinning every field of a chosen layout reproduces it, which is how
/// snapshots are checked on load.
Layout choose_layout(std::uint64_t ell, std::uint64_t n, LayoutTarget target,
                     const BuildOptions& opts = {});

/// Payload bits a structure with this layout will use.
std::uint64_t layout_payload_bits(std::uint64_t ell, std::uint64_t n, LayoutTarget target,
                                  const Layout& layout);

} // namespace srank
