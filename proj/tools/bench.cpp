#include "bench.hpp"

#include <iomanip>
#include <ostream>
#include <random>
#include <set>
#include <tuple>

#include "succinct_rank/approx_sliding.hpp"
#include "succinct_rank/approx_static.hpp"
#include "succinct_rank/bounds.hpp"
#include "succinct_rank/errors.hpp"
#include "succinct_rank/estimate.hpp"
#include "succinct_rank/exact_sliding.hpp"
#include "succinct_rank/exact_static.hpp"

namespace srank::cli {

namespace {

using clock_type = std::chrono::steady_clock;
using Vec = std::vector<std::uint64_t>;

double elapsed_ns(clock_type::time_point t0) {
    return std::chrono::duration<double, std::nano>(clock_type::now() - t0).count();
}

// Largest S - answer over the probes; approximate answers lie below S.
template <class F>
Estimate max_error(const Vec& indices, const Vec& truth, F&& f) {
    Estimate worst = Estimate::from_integer(0);
    for (std::size_t k = 0; k < indices.size(); ++k) {
        Estimate e = Estimate(static_cast<__int128>(truth[k]), 0) - f(indices[k]);
        if (e < 0) e = Estimate::from_integer(0) - e;
        if (e > worst) worst = e;
    }
    return worst;
}

Estimate as_estimate(std::uint64_t v) { return Estimate(static_cast<__int128>(v), 0); }

BenchRow run_cell(Kind kind, std::uint64_t ell, std::uint64_t n, std::uint64_t delta,
                  const Vec& values, const Vec& indices) {
    BenchRow row;
    row.kind = std::string(to_string(kind));
    row.ell = ell;
    row.n = n;
    row.delta = delta;
    row.bound_bits = is_approximate(kind) && delta > 1 ? lower_bound_bits({ell, n, delta})
                                                        : exact_bound_bits(ell, n);

    // Static kinds see values[0, n); sliding kinds the whole stream.
    Vec prefix{0};
    for (std::uint64_t v : values) prefix.push_back(prefix.back() + v);
    const std::uint64_t len = is_sliding(kind) ? values.size() : n;
    Vec truth;
    for (std::uint64_t i : indices) {
        truth.push_back(is_sliding(kind) ? prefix[len] - prefix[len - i] : prefix[i]);
    }
    const std::span<const std::uint64_t> x(values.data(), n);

    Timing t;
    Estimate err;
    const auto t0 = clock_type::now();
    switch (kind) {
    case Kind::ExactStatic: {
        const auto r = ExactStaticRanker::build(x, ell);
        row.build_ns = elapsed_ns(t0);
        row.payload_bits = r.payload_bits();
        t = time_queries(indices, [&](std::uint64_t i) { return r.query(i); });
        err = max_error(indices, truth, [&](std::uint64_t i) { return as_estimate(r.query(i)); });
        break;
    }
    case Kind::ApproxStatic: {
        const auto r = ApproxStaticRanker::build(x, ell, delta);
        row.build_ns = elapsed_ns(t0);
        row.payload_bits = r.payload_bits();
        t = time_queries(indices, [&](std::uint64_t i) { return r.query(i); });
        err = max_error(indices, truth, [&](std::uint64_t i) { return r.query(i); });
        break;
    }
    case Kind::ExactSliding: {
        ExactSlidingRanker r(ell, n);
        for (std::uint64_t v : values) r.add(v);
        row.build_ns = elapsed_ns(t0);
        row.payload_bits = r.payload_bits();
        t = time_queries(indices, [&](std::uint64_t i) { return r.query(i); });
        err = max_error(indices, truth, [&](std::uint64_t i) { return as_estimate(r.query(i)); });
        break;
    }
    case Kind::ApproxSliding: {
        ApproxSlidingRanker r({ell, n, delta});
        for (std::uint64_t v : values) r.add(v);
        row.build_ns = elapsed_ns(t0);
        row.payload_bits = r.payload_bits();
        t = time_queries(indices, [&](std::uint64_t i) { return r.query(i); });
        err = max_error(indices, truth, [&](std::uint64_t i) { return r.query(i); });
        break;
    }
    case Kind::NaivePrefix: {
        Vec p(n + 1, 0);
        for (std::uint64_t d = 0; d < n; ++d) p[d + 1] = p[d] + values[d];
        row.build_ns = elapsed_ns(t0);
        row.payload_bits = 64 * (n + 1);
        t = time_queries(indices, [&](std::uint64_t i) { return p[i]; });
        err = max_error(indices, truth, [&](std::uint64_t i) { return as_estimate(p[i]); });
        break;
    }
    case Kind::NaiveRing: {
        Vec ring(n, 0);
        std::uint64_t head = 0;
        for (std::uint64_t v : values) {
            ring[head] = v;
            head = head + 1 == n ? 0 : head + 1;
        }
        row.build_ns = elapsed_ns(t0);
        row.payload_bits = 64 * n + 64;  // values plus the head index
        auto sum = [&](std::uint64_t i) {
            std::uint64_t s = 0, at = head;
            for (std::uint64_t k = 0; k < i; ++k) {
                at = at == 0 ? n - 1 : at - 1;
                s += ring[at];
            }
            return s;
        };
        t = time_queries(indices, sum);
        err = max_error(indices, truth, [&](std::uint64_t i) { return as_estimate(sum(i)); });
        break;
    }
    }
    row.ratio = static_cast<double>(row.payload_bits) / row.bound_bits;
    row.mean_query_ns = t.mean_ns;
    row.p99_query_ns = t.p99_ns;
    row.max_observed_error = err.to_string();
    return row;
}

} // namespace

std::string_view to_string(Kind k) noexcept {
    switch (k) {
    case Kind::ExactStatic: return "exact-static";
    case Kind::ApproxStatic: return "approx-static";
    case Kind::ExactSliding: return "exact-sliding";
    case Kind::ApproxSliding: return "approx-sliding";
    case Kind::NaivePrefix: return "naive-prefix";
    case Kind::NaiveRing: return "naive-ring";
    }
    return "unknown";
}

Kind parse_kind(const std::string& name) {
    for (Kind k : {Kind::ExactStatic, Kind::ApproxStatic, Kind::ExactSliding, Kind::ApproxSliding,
                   Kind::NaivePrefix, Kind::NaiveRing}) {
        if (name == to_string(k)) return k;
    }
    throw ValidationError("unknown kind '" + name + "'");
}

bool is_sliding(Kind k) noexcept {
    return k == Kind::ExactSliding || k == Kind::ApproxSliding || k == Kind::NaiveRing;
}

bool is_approximate(Kind k) noexcept { return k == Kind::ApproxStatic || k == Kind::ApproxSliding; }

std::vector<BenchRow> run_bench(const BenchConfig& cfg, std::ostream& notes) {
    std::vector<BenchRow> rows;
    std::set<std::tuple<Kind, std::uint64_t, std::uint64_t>> exact_done;
    for (std::uint64_t ell : cfg.ells) {
        for (std::uint64_t delta : cfg.deltas) {
            for (std::uint64_t n : cfg.sizes) {
                // Sliding kinds ingest 2n values so the window has wrapped.
                Vec values;
                if (!cfg.source.empty()) {
                    if (cfg.source.size() < 2 * n) {
                        throw ValidationError("source has " + std::to_string(cfg.source.size()) +
                                              " values, bench needs " + std::to_string(2 * n));
                    }
                    values.assign(cfg.source.begin(), cfg.source.begin() + 2 * n);
                } else {
                    std::mt19937_64 rng(cfg.seed ^ (n * 0x9e3779b97f4a7c15ULL) ^ ell);
                    std::uniform_int_distribution<std::uint64_t> dist(0, ell);
                    values.resize(2 * n);
                    for (auto& v : values) v = dist(rng);
                }
                for (Kind kind : cfg.kinds) {
                    const std::uint64_t d = is_approximate(kind) ? delta : 1;
                    if (!is_approximate(kind) && !exact_done.insert({kind, ell, n}).second) continue;
                    // The naive ring pays O(i) per query; cap its total work.
                    std::uint64_t q = cfg.queries;
                    if (kind == Kind::NaiveRing) {
                        q = std::min(q, std::max<std::uint64_t>(64, (std::uint64_t{1} << 26) / n));
                    }
                    std::mt19937_64 qrng(cfg.seed + n);
                    std::uniform_int_distribution<std::uint64_t> pick(1, n);
                    Vec indices(q);
                    for (auto& i : indices) i = pick(qrng);
                    try {
                        rows.push_back(run_cell(kind, ell, n, d, values, indices));
                    } catch (const ValidationError& e) {
                        notes << "skipped " << to_string(kind) << " ell=" << ell << " n=" << n
                              << " delta=" << d << ": " << e.what() << '\n';
                    }
                }
            }
        }
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << kCsvHeader << '\n';
    const auto flags = out.flags();
    for (const BenchRow& r : rows) {
        out << r.kind << ',' << r.ell << ',' << r.n << ',' << r.delta << ',' << r.payload_bits << ','
            << std::fixed << std::setprecision(3) << r.bound_bits << ',' << std::setprecision(6)
            << r.ratio << ',' << std::setprecision(0) << r.build_ns << ',' << std::setprecision(2)
            << r.mean_query_ns << ',' << r.p99_query_ns << ',' << r.max_observed_error << '\n';
        out.flags(flags);
    }
}

} // namespace srank::cli
