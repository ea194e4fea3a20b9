#include "succinct_rank/approx_sliding.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "succinct_rank/errors.hpp"
#include "succinct_rank/io.hpp"
#include "succinct_rank/packed.hpp"

namespace srank {

namespace {

using u128 = unsigned __int128;

constexpr std::string_view kMagic = "SRAW";
constexpr std::uint32_t kVersion = 1;

// Highest total bit length allowed for any intermediate; leaves headroom
// below the signed 128-bit range and fits Estimate's fraction limit.
constexpr unsigned kMaxIntermediateBits = 125;

unsigned bit_length(u128 v) {
    const auto hi = static_cast<std::uint64_t>(v >> 64);
    return hi ? 64 + static_cast<unsigned>(std::bit_width(hi))
              : static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(v)));
}

u128 checked_mul(u128 a, u128 b) {
    u128 r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw CapacityError("sliding parameters overflow 128 bits");
    return r;
}

u128 checked_add(u128 a, u128 b) {
    u128 r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw CapacityError("sliding parameters overflow 128 bits");
    return r;
}

void write_u128(std::ostream& out, u128 v) { io::write_i128(out, static_cast<__int128>(v)); }
u128 read_u128(std::istream& in) { return static_cast<u128>(io::read_i128(in)); }

} // namespace

std::string_view to_string(QueryBranch b) noexcept {
    switch (b) {
    case QueryBranch::Exact: return "exact";
    case QueryBranch::Empty: return "empty";
    case QueryBranch::InBlock: return "in-block";
    case QueryBranch::SingleBlock: return "single-block";
    case QueryBranch::LastZero: return "last-zero";
    case QueryBranch::LastOne: return "last-one";
    }
    return "unknown";
}

ApproxSlidingRanker::ApproxSlidingRanker(const Params& p, const SlidingOptions& opts)
    : params_(p), permissive_(opts.permissive) {
    validate(p);
    if (p.delta > 1 && p.n >= 4) derived_ = derive_sliding(p);
    exact_mode_ = p.delta == 1 || p.n < 4 || derived_.exact_fallback;
    nu_div_ = Divider(exact_mode_ ? 1 : derived_.nu);
    if (exact_mode_) {
        derived_ = SlidingDerived{};
        inner_ = ExactSlidingRanker(p.ell, p.n, opts.inner);
        return;
    }

    const SlidingDerived& d = derived_;
    if (d.b + 1 > Estimate::kMaxFracBits || d.b >= kMaxIntermediateBits) {
        throw CapacityError("rounding precision of " + std::to_string(d.b) + " bits is too large");
    }
    // Largest magnitudes: x * 2^b while rounding, and the query numerator
    // 2 * 2^b * (2 sens + nu*ell + sens*S + ell*last*out).
    const u128 unit = u128{1} << d.b;
    const u128 top = checked_add(
        checked_add(checked_mul(d.sens, checked_mul(d.z_cap, d.s)),
                    checked_mul(p.ell, checked_mul(d.z_cap, d.nu))),
        checked_add(2 * u128{d.sens}, checked_mul(d.nu, p.ell)));
    if (bit_length(checked_mul(p.ell, unit)) > kMaxIntermediateBits ||
        bit_length(top) + d.b + 1 > kMaxIntermediateBits) {
        throw CapacityError("parameters need more than 128-bit exact arithmetic");
    }
    inner_ = ExactSlidingRanker(d.z_cap, d.s, opts.inner);
}

u128 ApproxSlidingRanker::round_scaled(std::uint64_t x, std::uint64_t b, std::uint64_t ell) {
    return ((u128{x} << b) / ell) * ell;
}

void ApproxSlidingRanker::add(std::uint64_t x) {
    if (x > params_.ell) {
        throw ValidationError("value " + std::to_string(x) + " exceeds ell = " +
                              std::to_string(params_.ell));
    }
    if (exact_mode_) {
        inner_.add(x);
        ++count_;
        return;
    }
    r_scaled_ += round_scaled(x, derived_.b, params_.ell);
    offset_ = (offset_ + 1) % derived_.nu;
    if (offset_ == 0) {
        const u128 unit = u128{derived_.sens} << derived_.b;
        const u128 y = r_scaled_ / unit;
        r_scaled_ -= y * unit;
        inner_.add(static_cast<std::uint64_t>(y));
        last_y_ = static_cast<std::uint64_t>(y);
        r0_scaled_ = r_scaled_;
    }
    ++count_;
}

Estimate ApproxSlidingRanker::query(std::uint64_t i, QueryTrace* trace) const {
    QueryTrace local;
    QueryTrace& tr = trace ? *trace : local;
    tr = QueryTrace{};
    if (i > params_.n) {
        throw std::out_of_range("window " + std::to_string(i) + " exceeds n = " +
                                std::to_string(params_.n));
    }
    if (!permissive_ && i > count_) {
        throw ValidationError("window " + std::to_string(i) + " exceeds the " +
                              std::to_string(count_) + " values seen so far");
    }
    if (exact_mode_) {
        tr.branch = QueryBranch::Exact;
        tr.probes = 1;
        return Estimate(static_cast<__int128>(inner_.query(i)), 0);
    }

    const std::uint64_t b = derived_.b;
    const __int128 unit = __int128{1} << b;
    if (i == 0) {
        tr.branch = QueryBranch::Empty;
        return Estimate(-unit, static_cast<unsigned>(b + 1));
    }

    const std::uint64_t nu = derived_.nu;
    const std::uint64_t o = offset_;
    if (i <= o) {
        // The window is part of the unfinished block whose rounded sum is
        // T = (r - r0) / 2^b; the window holds at least ceil(T) - (o-i)*ell.
        tr.branch = QueryBranch::InBlock;
        const u128 t_scaled = r_scaled_ - r0_scaled_;
        const __int128 ceil_t = static_cast<__int128>((t_scaled + unit - 1) >> b);
        const __int128 lo = std::max<__int128>(
            0, ceil_t - static_cast<__int128>(o - i) * params_.ell);
        return Estimate((2 * lo - 1) * unit, static_cast<unsigned>(b + 1));
    }

    const std::uint64_t blocks = nu_div_.div(i - o + nu - 1);
    const std::uint64_t s_val = inner_.query(blocks);
    const std::uint64_t last = inner_.element(blocks - 1);
    tr.probes = 2;
    const std::uint64_t out = nu * blocks - (i - o);
    tr.branch = nu == 1 ? QueryBranch::SingleBlock
                        : (last == 0 ? QueryBranch::LastZero : QueryBranch::LastOne);

    const __int128 sens = derived_.sens;
    const __int128 inner_part = sens * static_cast<__int128>(s_val) -
                                static_cast<__int128>(params_.ell) * last * out;
    const __int128 val = static_cast<__int128>(r_scaled_) - sens * unit + unit * inner_part;
    return Estimate(2 * val, static_cast<unsigned>(b + 1));
}

Estimate ApproxSlidingRanker::interval(std::uint64_t t1, std::uint64_t t2) const {
    if (t2 > t1) throw ValidationError("interval needs t2 <= t1");
    return query(t1) - query(t2);
}

unsigned ApproxSlidingRanker::remainder_bits() const noexcept {
    if (exact_mode_) return 0;
    const u128 limit = (u128{derived_.sens} + u128{derived_.nu} * params_.ell) << derived_.b;
    return bit_length(limit - 1);
}

unsigned ApproxSlidingRanker::offset_bits() const noexcept {
    return exact_mode_ || derived_.nu == 1 ? 0 : bits_for(derived_.nu - 1);
}

std::uint64_t ApproxSlidingRanker::payload_bits() const noexcept {
    if (exact_mode_) return inner_.payload_bits();
    // The block-start remainder is only read when blocks span several values.
    const unsigned r0 = derived_.nu > 1 ? remainder_bits() : 0;
    return inner_.payload_bits() + remainder_bits() + r0 + offset_bits();
}

double ApproxSlidingRanker::bits_ratio() const {
    const double bound = params_.delta == 1 ? exact_bound_bits(params_.ell, params_.n)
                                            : lower_bound_bits(params_);
    return static_cast<double>(payload_bits()) / bound;
}

void ApproxSlidingRanker::save(std::ostream& out) const {
    io::write_tag(out, kMagic);
    io::write_u32(out, kVersion);
    io::write_u64(out, params_.ell);
    io::write_u64(out, params_.n);
    io::write_u64(out, params_.delta);
    io::write_u32(out, permissive_ ? 1 : 0);
    write_u128(out, r_scaled_);
    write_u128(out, r0_scaled_);
    io::write_u64(out, offset_);
    io::write_u64(out, count_);
    io::write_u64(out, last_y_);
    inner_.save(out);
}

ApproxSlidingRanker ApproxSlidingRanker::load(std::istream& in) {
    io::expect_tag(in, kMagic);
    if (io::read_u32(in) != kVersion) throw FormatError("unsupported sliding ranker version");
    Params p;
    p.ell = io::read_u64(in);
    p.n = io::read_u64(in);
    p.delta = io::read_u64(in);
    const std::uint32_t flag = io::read_u32(in);
    if (flag > 1) throw FormatError("corrupt sliding ranker header");

    ApproxSlidingRanker r;
    r.params_ = p;
    r.permissive_ = flag == 1;
    try {
        validate(p);
        if (p.delta > 1 && p.n >= 4) r.derived_ = derive_sliding(p);
    } catch (const std::exception& e) {
        throw FormatError(std::string("corrupt sliding ranker header: ") + e.what());
    }
    r.exact_mode_ = p.delta == 1 || p.n < 4 || r.derived_.exact_fallback;
    if (r.exact_mode_) r.derived_ = SlidingDerived{};
    r.nu_div_ = Divider(r.derived_.nu);
    r.r_scaled_ = read_u128(in);
    r.r0_scaled_ = read_u128(in);
    r.offset_ = io::read_u64(in);
    r.count_ = io::read_u64(in);
    r.last_y_ = io::read_u64(in);
    r.inner_ = ExactSlidingRanker::load(in);

    bool ok;
    if (r.exact_mode_) {
        ok = r.r_scaled_ == 0 && r.r0_scaled_ == 0 && r.offset_ == 0 && r.last_y_ == 0 &&
             r.inner_.ell() == p.ell && r.inner_.window() == p.n && r.inner_.count() == r.count_;
    } else {
        const SlidingDerived& d = r.derived_;
        const u128 unit = u128{1} << d.b;
        ok = d.b < kMaxIntermediateBits && r.inner_.ell() == d.z_cap &&
             r.inner_.window() == d.s && r.offset_ < d.nu && r.offset_ == r.count_ % d.nu &&
             r.inner_.count() == r.count_ / d.nu && r.last_y_ <= d.z_cap &&
             r.r0_scaled_ < u128{d.sens} * unit && r.r0_scaled_ <= r.r_scaled_ &&
             r.r_scaled_ - r.r0_scaled_ <= u128{r.offset_} * p.ell * unit;
    }
    if (!ok) throw FormatError("sliding ranker state does not match header");
    return r;
}

} // namespace srank
