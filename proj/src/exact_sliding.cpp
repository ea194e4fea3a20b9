#include "succinct_rank/exact_sliding.hpp"

#include <string>
#include <utility>

#include "succinct_rank/bounds.hpp"
#include "succinct_rank/errors.hpp"
#include "succinct_rank/io.hpp"

namespace srank {

namespace {

constexpr std::string_view kMagic = "SRXW";
constexpr std::uint32_t kVersion = 1;

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return a / b + (a % b != 0); }

std::uint64_t low_mask(unsigned bits) {
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

} // namespace

ExactSlidingRanker::ExactSlidingRanker(std::uint64_t ell, std::uint64_t n,
                                       const BuildOptions& opts)
    : ell_(ell), n_(n) {
    validate(Params{ell, n, 1});
    layout_ = choose_layout(ell, n, LayoutTarget::Sliding, opts);
    allocate();
}

ExactSlidingRanker::Shapes ExactSlidingRanker::shapes() const {
    const std::uint64_t cl = layout_.chunk_len;
    const std::uint64_t sl = layout_.sub_len;
    Shapes sh;
    sh.c = {bits_for(ell_ * n_), ceil_div(n_, cl) + 1};
    sh.sc = {bits_for(ell_ * cl), ceil_div(n_, sl) + 1};
    if (layout_.strategy == Strategy::LookupTable) {
        // A multiple of sub_len, so every sub-chunk sits in consecutive slots.
        sh.w = {bits_for(ell_), sl * (ceil_div(n_, sl) + 1)};
    } else {
        sh.w = {bits_for(ell_ * sl), n_ + 1};
    }
    return sh;
}

void ExactSlidingRanker::allocate() {
    const Shapes sh = shapes();
    prefix_bits_ = sh.c.first;
    prefix_mask_ = low_mask(prefix_bits_);
    chunk_div_ = Divider(layout_.chunk_len);
    sub_div_ = Divider(layout_.sub_len);
    c_ = PackedRing(sh.c.first, sh.c.second);
    sc_ = PackedRing(sh.sc.first, sh.sc.second);
    w_ = PackedRing(sh.w.first, sh.w.second);
    if (layout_.strategy == Strategy::LookupTable) {
        table_ = SumTable(bits_for(ell_), layout_.group_len, ell_);
    }
}

void ExactSlidingRanker::add(std::uint64_t x) {
    if (x > ell_) {
        throw ValidationError("value " + std::to_string(x) + " exceeds ell = " +
                              std::to_string(ell_));
    }
    sub_acc_ += x;
    w_.push(layout_.strategy == Strategy::LookupTable ? x : sub_acc_);
    chunk_acc_ += x;
    total_ = (total_ + x) & prefix_mask_;
    ++count_;
    if (count_ % layout_.sub_len == 0) {
        sc_.push(chunk_acc_);
        sub_acc_ = 0;
    }
    if (count_ % layout_.chunk_len == 0) {
        c_.push(total_);
        chunk_acc_ = 0;
    }
}

std::uint64_t ExactSlidingRanker::query(std::uint64_t i, unsigned* probes) const {
    if (i > n_) {
        throw std::out_of_range("window " + std::to_string(i) + " exceeds n = " +
                                std::to_string(n_));
    }
    if (i == 0) return 0;
    if (i >= count_) return total_;

    // Prefix of the first t elements, rebuilt from the rings.
    const std::uint64_t sl = layout_.sub_len;
    const std::uint64_t t = count_ - i;
    const std::uint64_t sub = sub_div_.div(t);
    std::uint64_t prefix = c_.at(chunk_div_.div(count_) - chunk_div_.div(t));
    if (chunk_div_.mod(sub * sl) != 0) prefix += sc_.at(sub_div_.div(count_) - sub);
    const std::uint64_t rest = t - sub * sl;
    if (rest > 0) {
        if (layout_.strategy == Strategy::LookupTable) {
            const std::size_t slot = w_.slot_of_age(count_ - 1 - sub * sl);
            prefix += table_.sum(w_.storage(), slot, rest, probes);
        } else {
            prefix += w_.at(i);  // element t-1 is i pushes old
        }
    }
    return (total_ - prefix) & prefix_mask_;
}

std::uint64_t ExactSlidingRanker::element(std::uint64_t age) const {
    if (age >= n_) {
        throw std::out_of_range("age " + std::to_string(age) + " exceeds n = " + std::to_string(n_));
    }
    if (age >= count_) return 0;
    const std::uint64_t here = w_.at(age);
    if (layout_.strategy == Strategy::LookupTable) return here;
    // The first value of a sub-chunk is its own running sum.
    return sub_div_.mod(count_ - 1 - age) == 0 ? here : here - w_.at(age + 1);
}

std::uint64_t ExactSlidingRanker::payload_bits() const noexcept {
    // Running total, chunk and sub-chunk accumulators.
    return c_.payload_bits() + sc_.payload_bits() + w_.payload_bits() + table_.payload_bits() +
           c_.storage().width() + sc_.storage().width() + bits_for(ell_ * layout_.sub_len);
}

double ExactSlidingRanker::bits_ratio() const {
    return static_cast<double>(payload_bits()) / exact_bound_bits(ell_, n_);
}

void ExactSlidingRanker::save(std::ostream& out) const {
    io::write_tag(out, kMagic);
    io::write_u32(out, kVersion);
    io::write_u64(out, ell_);
    io::write_u64(out, n_);
    io::write_u32(out, static_cast<std::uint32_t>(layout_.strategy));
    io::write_u64(out, layout_.chunk_len);
    io::write_u64(out, layout_.sub_len);
    io::write_u64(out, layout_.group_len);
    io::write_u64(out, total_);
    io::write_u64(out, chunk_acc_);
    io::write_u64(out, sub_acc_);
    io::write_u64(out, count_);
    c_.write(out);
    sc_.write(out);
    w_.write(out);
}

ExactSlidingRanker ExactSlidingRanker::load(std::istream& in) {
    io::expect_tag(in, kMagic);
    if (io::read_u32(in) != kVersion) throw FormatError("unsupported sliding ranker version");
    ExactSlidingRanker r;
    r.ell_ = io::read_u64(in);
    r.n_ = io::read_u64(in);
    const std::uint32_t strategy = io::read_u32(in);
    if (strategy > 1) throw FormatError("unknown strategy tag");
    r.layout_.strategy = static_cast<Strategy>(strategy);
    r.layout_.chunk_len = io::read_u64(in);
    r.layout_.sub_len = io::read_u64(in);
    r.layout_.group_len = io::read_u64(in);
    r.total_ = io::read_u64(in);
    r.chunk_acc_ = io::read_u64(in);
    r.sub_acc_ = io::read_u64(in);
    r.count_ = io::read_u64(in);

    const Layout& l = r.layout_;
    try {
        validate(Params{r.ell_, r.n_, 1});
        BuildOptions pin;
        pin.strategy = l.strategy;
        pin.chunk_len = l.chunk_len;
        pin.sub_len = l.sub_len;
        pin.group_len = l.group_len;
        if (choose_layout(r.ell_, r.n_, LayoutTarget::Sliding, pin) != l) {
            throw FormatError("inconsistent layout");
        }
        r.prefix_bits_ = bits_for(r.ell_ * r.n_);
        r.prefix_mask_ = low_mask(r.prefix_bits_);
        r.chunk_div_ = Divider(l.chunk_len);
        r.sub_div_ = Divider(l.sub_len);
        if (l.strategy == Strategy::LookupTable) {
            r.table_ = SumTable(bits_for(r.ell_), l.group_len, r.ell_);
        }
    } catch (const std::exception& e) {
        throw FormatError(std::string("corrupt sliding ranker header: ") + e.what());
    }
    auto shape = [](const PackedRing& ring) {
        return std::pair<unsigned, std::uint64_t>{ring.storage().width(), ring.size()};
    };
    const Shapes want = r.shapes();
    r.c_ = PackedRing::read(in);
    r.sc_ = PackedRing::read(in);
    r.w_ = PackedRing::read(in);

    const std::uint64_t c = r.count_;
    if (shape(r.c_) != want.c || shape(r.sc_) != want.sc || shape(r.w_) != want.w ||
        r.c_.head() != (c / l.chunk_len) % r.c_.size() ||
        r.sc_.head() != (c / l.sub_len) % r.sc_.size() || r.w_.head() != c % r.w_.size() ||
        r.total_ > r.prefix_mask_ || r.chunk_acc_ > r.ell_ * l.chunk_len ||
        r.sub_acc_ > r.ell_ * l.sub_len) {
        throw FormatError("sliding ranker body does not match header");
    }
    return r;
}

} // namespace srank
