#include "succinct_rank/approx_static.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "succinct_rank/errors.hpp"
#include "succinct_rank/io.hpp"
#include "succinct_rank/packed.hpp"

namespace srank {

namespace {

constexpr std::string_view kMagic = "SRAS";
constexpr std::uint32_t kVersion = 1;

} // namespace

ApproxStaticRanker ApproxStaticRanker::build(std::span<const std::uint64_t> x,
                                             std::uint64_t ell, std::uint64_t delta,
                                             const BuildOptions& inner_opts) {
    if (x.empty()) throw ValidationError("ranker needs n >= 1");
    ApproxStaticRanker r;
    r.params_ = Params{ell, x.size(), delta};
    r.derived_ = derive_static(r.params_);
    r.nu_div_ = Divider(r.derived_.nu);
    for (std::size_t d = 0; d < x.size(); ++d) {
        if (x[d] > ell) {
            throw ValidationError("value " + std::to_string(x[d]) + " at position " +
                                  std::to_string(d + 1) + " exceeds ell = " +
                                  std::to_string(ell));
        }
    }

    if (delta == 1) {
        r.inner_ = ExactStaticRanker::build(x, ell, inner_opts);
        r.has_inner_ = true;
        return r;
    }

    const std::uint64_t nu = r.derived_.nu;
    const std::uint64_t s = r.derived_.s;
    // The n mod nu leading values form one extra, shorter block.
    const std::uint64_t blocks = s + (x.size() % nu != 0);
    std::vector<std::uint64_t> y(blocks);
    // Running sum from the tail; y_k is the growth of floor(T_k / delta).
    std::uint64_t tail = 0;
    std::uint64_t prev_units = 0;
    std::size_t d = x.size();
    for (std::uint64_t k = 0; k < blocks; ++k) {
        for (std::uint64_t j = 0; j < nu && d > 0; ++j) tail += x[--d];
        const std::uint64_t units = tail / delta;
        y[k] = units - prev_units;
        prev_units = units;
    }
    r.rem_ = tail - delta * prev_units;
    r.inner_ = ExactStaticRanker::build(y, r.derived_.z_cap, inner_opts);
    r.has_inner_ = true;
    return r;
}

std::uint64_t ApproxStaticRanker::block_value(std::uint64_t k) const {
    if (k == 0 || k > blocks()) throw std::out_of_range("block index out of range");
    return inner_.element(k - 1);
}

std::uint64_t ApproxStaticRanker::inner_prefix(std::uint64_t j, unsigned* probes) const {
    if (probes) ++*probes;
    return has_inner_ ? inner_.query(j) : 0;
}

Estimate ApproxStaticRanker::query(std::uint64_t i, unsigned* probes) const {
    if (probes) *probes = 0;
    if (i > params_.n) {
        throw std::out_of_range("query " + std::to_string(i) + " exceeds n = " +
                                std::to_string(params_.n));
    }
    if (is_exact()) {
        if (probes) *probes = 1;
        return Estimate(static_cast<__int128>(inner_.query(i)), 0);
    }
    if (i == 0) return Estimate(-1, 1);

    const std::uint64_t nu = derived_.nu;
    const std::uint64_t s = blocks();
    const std::uint64_t q = params_.n - i;
    const std::uint64_t fl = nu_div_.div(q);
    // The block straddling position i has cut_len values after it.
    const std::uint64_t cut_len = q - fl * nu;

    const __int128 delta = params_.delta;
    const __int128 r_s = inner_prefix(s, probes);
    const __int128 r_fl = inner_prefix(fl, probes);
    // R(fl + 1) - R(fl), read directly.
    std::uint64_t cut = 0;
    if (cut_len != 0) {
        if (probes) ++*probes;
        cut = inner_.element(fl);
    }
    const __int128 twice = 2 * static_cast<__int128>(rem_) - (2 * delta - 1) +
                           2 * delta * (r_s - r_fl) -
                           2 * static_cast<__int128>(params_.ell) * cut_len * cut;
    return Estimate(twice, 1);
}

unsigned ApproxStaticRanker::remainder_bits() const noexcept {
    return is_exact() ? 0 : bits_for(params_.delta - 1);
}

std::uint64_t ApproxStaticRanker::payload_bits() const noexcept {
    return (has_inner_ ? inner_.payload_bits() : 0) + remainder_bits();
}

double ApproxStaticRanker::bits_ratio() const {
    const double bound = is_exact() ? exact_bound_bits(params_.ell, params_.n)
                                    : lower_bound_bits(params_);
    return static_cast<double>(payload_bits()) / bound;
}

void ApproxStaticRanker::save(std::ostream& out) const {
    io::write_tag(out, kMagic);
    io::write_u32(out, kVersion);
    io::write_u64(out, params_.ell);
    io::write_u64(out, params_.n);
    io::write_u64(out, params_.delta);
    io::write_u64(out, rem_);
    io::write_u32(out, has_inner_ ? 1 : 0);
    if (has_inner_) inner_.save(out);
}

ApproxStaticRanker ApproxStaticRanker::load(std::istream& in) {
    io::expect_tag(in, kMagic);
    if (io::read_u32(in) != kVersion) throw FormatError("unsupported approx ranker version");
    ApproxStaticRanker r;
    r.params_.ell = io::read_u64(in);
    r.params_.n = io::read_u64(in);
    r.params_.delta = io::read_u64(in);
    r.rem_ = io::read_u64(in);
    const std::uint32_t flag = io::read_u32(in);
    if (flag > 1) throw FormatError("corrupt approx ranker header");
    r.has_inner_ = flag == 1;
    try {
        r.derived_ = derive_static(r.params_);
        r.nu_div_ = Divider(r.derived_.nu);
    } catch (const std::exception& e) {
        throw FormatError(std::string("corrupt approx ranker header: ") + e.what());
    }
    if (r.has_inner_) r.inner_ = ExactStaticRanker::load(in);

    const bool exact = r.params_.delta == 1;
    const std::uint64_t nu = r.derived_.nu;
    const std::uint64_t want_len = exact ? r.params_.n : (r.params_.n + nu - 1) / nu;
    const std::uint64_t want_ell = exact ? r.params_.ell : r.derived_.z_cap;
    if (!r.has_inner_ || r.inner_.size() != want_len || r.inner_.ell() != want_ell ||
        (exact ? r.rem_ != 0 : r.rem_ >= r.params_.delta)) {
        throw FormatError("approx ranker body does not match header");
    }
    return r;
}

} // namespace srank
