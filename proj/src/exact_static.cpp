#include "succinct_rank/exact_static.hpp"

#include <string>

#include "succinct_rank/bounds.hpp"
#include "succinct_rank/errors.hpp"
#include "succinct_rank/io.hpp"

namespace srank {

namespace {

constexpr std::string_view kMagic = "SRXS";
constexpr std::uint32_t kVersion = 1;

void check_elements(std::span<const std::uint64_t> x, std::uint64_t ell) {
    for (std::size_t d = 0; d < x.size(); ++d) {
        if (x[d] > ell) {
            throw ValidationError("value " + std::to_string(x[d]) + " at position " +
                                  std::to_string(d + 1) + " exceeds ell = " +
                                  std::to_string(ell));
        }
    }
}

} // namespace

ExactStaticRanker ExactStaticRanker::build(std::span<const std::uint64_t> x, std::uint64_t ell,
                                           const BuildOptions& opts) {
    if (x.empty()) throw ValidationError("exact ranker needs n >= 1");
    validate(Params{ell, x.size(), 1});
    check_elements(x, ell);

    ExactStaticRanker r;
    r.ell_ = ell;
    r.n_ = x.size();
    r.layout_ = choose_layout(ell, r.n_, LayoutTarget::Static, opts);
    r.chunk_div_ = Divider(r.layout_.chunk_len);
    r.sub_div_ = Divider(r.layout_.sub_len);
    const std::uint64_t cl = r.layout_.chunk_len;
    const std::uint64_t sl = r.layout_.sub_len;

    r.chunk_sums_ = PackedArray(bits_for(ell * r.n_), r.n_ / cl);
    r.sub_sums_ = PackedArray(bits_for(ell * cl), r.n_ / sl);
    if (r.layout_.strategy == Strategy::LookupTable) {
        r.raw_ = PackedArray(bits_for(ell), r.n_);
        r.table_ = SumTable(bits_for(ell), r.layout_.group_len, ell);
    } else {
        r.within_ = PackedArray(bits_for(ell * sl), r.n_);
    }

    std::uint64_t total = 0;
    std::uint64_t in_chunk = 0;
    std::uint64_t in_sub = 0;
    for (std::uint64_t d = 0; d < r.n_; ++d) {
        total += x[d];
        in_chunk += x[d];
        in_sub += x[d];
        if (r.layout_.strategy == Strategy::LookupTable) {
            r.raw_.set(d, x[d]);
        } else {
            r.within_.set(d, in_sub);
        }
        const std::uint64_t end = d + 1;
        if (end % sl == 0) {
            r.sub_sums_.set(end / sl - 1, in_chunk);
            in_sub = 0;
        }
        if (end % cl == 0) {
            r.chunk_sums_.set(end / cl - 1, total);
            in_chunk = 0;
        }
    }
    return r;
}

std::uint64_t ExactStaticRanker::query(std::uint64_t i) const {
    if (i > n_) {
        throw std::out_of_range("query " + std::to_string(i) + " exceeds n = " +
                                std::to_string(n_));
    }
    const std::uint64_t cl = layout_.chunk_len;
    const std::uint64_t sl = layout_.sub_len;
    const std::uint64_t chunk = chunk_div_.div(i);
    const std::uint64_t sub = sub_div_.div(i);

    std::uint64_t sum = chunk > 0 ? chunk_sums_.get(chunk - 1) : 0;
    // A sub-chunk boundary that is also a chunk boundary adds nothing.
    if (sub * sl > chunk * cl) sum += sub_sums_.get(sub - 1);
    const std::uint64_t rest = i - sub * sl;
    if (rest > 0) {
        sum += layout_.strategy == Strategy::LookupTable ? table_.sum(raw_, sub * sl, rest)
                                                         : within_.get(i - 1);
    }
    return sum;
}

std::uint64_t ExactStaticRanker::element(std::uint64_t d) const {
    if (d >= n_) throw std::out_of_range("element index out of range");
    if (layout_.strategy == Strategy::LookupTable) return raw_.get(d);
    const std::uint64_t here = within_.get(d);
    return sub_div_.mod(d) == 0 ? here : here - within_.get(d - 1);
}

std::uint64_t ExactStaticRanker::payload_bits() const noexcept {
    return chunk_sums_.payload_bits() + sub_sums_.payload_bits() + raw_.payload_bits() +
           table_.payload_bits() + within_.payload_bits();
}

double ExactStaticRanker::bits_ratio() const {
    return static_cast<double>(payload_bits()) / exact_bound_bits(ell_, n_);
}

void ExactStaticRanker::save(std::ostream& out) const {
    io::write_tag(out, kMagic);
    io::write_u32(out, kVersion);
    io::write_u64(out, ell_);
    io::write_u64(out, n_);
    io::write_u32(out, static_cast<std::uint32_t>(layout_.strategy));
    io::write_u64(out, layout_.chunk_len);
    io::write_u64(out, layout_.sub_len);
    io::write_u64(out, layout_.group_len);
    chunk_sums_.write(out);
    sub_sums_.write(out);
    if (layout_.strategy == Strategy::LookupTable) {
        raw_.write(out);
    } else {
        within_.write(out);
    }
}

ExactStaticRanker ExactStaticRanker::load(std::istream& in) {
    io::expect_tag(in, kMagic);
    if (io::read_u32(in) != kVersion) throw FormatError("unsupported exact ranker version");
    ExactStaticRanker r;
    r.ell_ = io::read_u64(in);
    r.n_ = io::read_u64(in);
    const std::uint32_t strategy = io::read_u32(in);
    if (strategy > 1) throw FormatError("unknown strategy tag");
    r.layout_.strategy = static_cast<Strategy>(strategy);
    r.layout_.chunk_len = io::read_u64(in);
    r.layout_.sub_len = io::read_u64(in);
    r.layout_.group_len = io::read_u64(in);

    const Layout& l = r.layout_;
    try {
        validate(Params{r.ell_, r.n_, 1});
        BuildOptions pin;
        pin.strategy = l.strategy;
        pin.chunk_len = l.chunk_len;
        pin.sub_len = l.sub_len;
        pin.group_len = l.group_len;
        if (choose_layout(r.ell_, r.n_, LayoutTarget::Static, pin) != l) {
            throw FormatError("inconsistent layout");
        }
    } catch (const std::exception& e) {
        throw FormatError(std::string("corrupt exact ranker header: ") + e.what());
    }
    r.chunk_div_ = Divider(l.chunk_len);
    r.sub_div_ = Divider(l.sub_len);

    r.chunk_sums_ = PackedArray::read(in);
    r.sub_sums_ = PackedArray::read(in);
    const bool lookup = l.strategy == Strategy::LookupTable;
    (lookup ? r.raw_ : r.within_) = PackedArray::read(in);

    const PackedArray& per_elem = lookup ? r.raw_ : r.within_;
    const unsigned elem_width = bits_for(lookup ? r.ell_ : r.ell_ * l.sub_len);
    if (r.chunk_sums_.size() != r.n_ / l.chunk_len ||
        r.chunk_sums_.width() != bits_for(r.ell_ * r.n_) ||
        r.sub_sums_.size() != r.n_ / l.sub_len ||
        r.sub_sums_.width() != bits_for(r.ell_ * l.chunk_len) || per_elem.size() != r.n_ ||
        per_elem.width() != elem_width) {
        throw FormatError("exact ranker arrays do not match header");
    }
    if (lookup) {
        try {
            r.table_ = SumTable(bits_for(r.ell_), l.group_len, r.ell_);
        } catch (const ValidationError& e) {
            throw FormatError(std::string("corrupt exact ranker header: ") + e.what());
        }
    }
    return r;
}

} // namespace srank
