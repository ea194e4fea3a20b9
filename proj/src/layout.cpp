#include "succinct_rank/layout.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>
#include <vector>

#include "succinct_rank/errors.hpp"
#include "succinct_rank/packed.hpp"

namespace srank {

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return a / b + (a % b != 0); }

std::uint64_t round_up(std::uint64_t v, std::uint64_t m) { return ceil_div(v, m) * m; }

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    return __builtin_mul_overflow(a, b, &r) ? std::numeric_limits<std::uint64_t>::max() : r;
}

unsigned log_bucket(std::uint64_t n) {
    return std::max(2u, static_cast<unsigned>(std::bit_width(n - 1)));
}

// Smallest and largest key widths tried for table probes; the table holds
// 2^(group_len*width) sums, so even the widest key keeps it at O(n^(3/4)).
unsigned min_key_bits(std::uint64_t ell, std::uint64_t n) {
    return std::max((log_bucket(n) + 1) / 2, bits_for(ell));
}

unsigned max_key_bits(std::uint64_t ell, std::uint64_t n) {
    return std::max((3 * log_bucket(n) + 3) / 4, bits_for(ell));
}

bool lookup_feasible(std::uint64_t ell) { return bits_for(ell) <= kMaxTableKeyBits; }

} // namespace

std::string_view to_string(Strategy s) noexcept {
    return s == Strategy::LookupTable ? "lookup" : "cumulative";
}

std::uint64_t layout_payload_bits(std::uint64_t ell, std::uint64_t n, LayoutTarget target,
                                  const Layout& l) {
    const std::uint64_t wx = bits_for(ell);
    const std::uint64_t wc = bits_for(saturating_mul(ell, n));
    const std::uint64_t ws = bits_for(saturating_mul(ell, l.chunk_len));
    const std::uint64_t ww = bits_for(saturating_mul(ell, l.sub_len));
    const bool sliding = target == LayoutTarget::Sliding;

    const std::uint64_t chunks = sliding ? ceil_div(n, l.chunk_len) + 1 : n / l.chunk_len;
    const std::uint64_t subs = sliding ? ceil_div(n, l.sub_len) + 1 : n / l.sub_len;
    std::uint64_t bits = chunks * wc + subs * ws;
    if (l.strategy == Strategy::Cumulative) {
        bits += (sliding ? n + 1 : n) * ww;
    } else {
        const std::uint64_t slots = sliding ? l.sub_len * (ceil_div(n, l.sub_len) + 1) : n;
        const unsigned key = static_cast<unsigned>(l.group_len * wx);
        bits += slots * wx + (std::uint64_t{1} << key) * bits_for(saturating_mul(ell, l.group_len));
    }
    // Running accumulators of the sliding variant.
    if (sliding) bits += wc + ws + ww;
    return bits;
}

Layout choose_layout(std::uint64_t ell, std::uint64_t n, LayoutTarget target,
                     const BuildOptions& opts) {
    if (n == 0) throw ValidationError("layout needs n >= 1");
    if (opts.chunk_len && *opts.chunk_len == 0) throw ValidationError("chunk_len must be positive");
    if (opts.sub_len && *opts.sub_len == 0) throw ValidationError("sub_len must be positive");
    if (opts.chunk_len && *opts.chunk_len > kMaxChunkLen) throw ValidationError("chunk_len too large");
    if (opts.sub_len && *opts.sub_len > kMaxSubLen) throw ValidationError("sub_len too large");
    if (opts.chunk_len && saturating_mul(ell, *opts.chunk_len) == ~std::uint64_t{0}) {
        throw CapacityError("ell * chunk_len does not fit in 64 bits");
    }
    if (opts.chunk_len && opts.sub_len && *opts.chunk_len % *opts.sub_len != 0) {
        throw ValidationError("sub_len must divide chunk_len");
    }
    if (opts.group_len &&
        (*opts.group_len == 0 || saturating_mul(*opts.group_len, bits_for(ell)) > kMaxTableKeyBits)) {
        throw ValidationError("group_len must be positive with keys of at most " +
                              std::to_string(kMaxTableKeyBits) + " bits");
    }
    if (opts.strategy == Strategy::LookupTable && !lookup_feasible(ell)) {
        throw ValidationError("lookup strategy needs values of at most " +
                              std::to_string(kMaxTableKeyBits) + " bits");
    }

    const unsigned c = log_bucket(n);
    const std::uint64_t base_chunk = std::uint64_t{c} * c;
    const unsigned wx = bits_for(ell);

    std::vector<Layout> candidates;
    auto add = [&](Strategy st, std::uint64_t sub, std::uint64_t group) {
        if (opts.chunk_len && *opts.chunk_len % sub != 0) return;
        Layout l;
        l.strategy = st;
        l.sub_len = sub;
        l.group_len = group;
        l.chunk_len = opts.chunk_len ? *opts.chunk_len : round_up(base_chunk, sub);
        candidates.push_back(l);
    };

    const bool allow_lookup = opts.strategy != Strategy::Cumulative && lookup_feasible(ell);
    const bool allow_cumulative = opts.strategy != Strategy::LookupTable;

    if (allow_lookup) {
        std::vector<std::uint64_t> groups;
        if (opts.group_len) {
            groups.push_back(*opts.group_len);
        } else {
            const unsigned lo = std::min(min_key_bits(ell, n), kMaxTableKeyBits);
            const unsigned hi = std::min(max_key_bits(ell, n), kMaxTableKeyBits);
            for (unsigned key = lo; key <= hi; ++key) {
                const std::uint64_t per_key = std::max<std::uint64_t>(key / wx, 1);
                if (groups.empty() || groups.back() != per_key) groups.push_back(per_key);
            }
        }
        for (std::uint64_t g : groups) {
            if (opts.sub_len) {
                add(Strategy::LookupTable, *opts.sub_len, std::min(g, *opts.sub_len));
            } else {
                for (std::uint64_t p = 1; p <= kMaxAutoProbes; ++p) add(Strategy::LookupTable, g * p, g);
            }
        }
    }
    if (allow_cumulative) {
        if (opts.sub_len) {
            add(Strategy::Cumulative, *opts.sub_len, 1);
        } else {
            for (std::uint64_t sub = 1; sub <= c; ++sub) add(Strategy::Cumulative, sub, 1);
        }
    }
    if (candidates.empty()) {
        throw ValidationError("no sub-chunk length compatible with chunk_len " +
                              std::to_string(opts.chunk_len.value_or(0)));
    }

    Layout best = candidates.front();
    std::uint64_t best_bits = layout_payload_bits(ell, n, target, best);
    for (const Layout& l : candidates) {
        const std::uint64_t bits = layout_payload_bits(ell, n, target, l);
        if (bits < best_bits) {
            best = l;
            best_bits = bits;
        }
    }
    return best;
}

} // namespace srank
