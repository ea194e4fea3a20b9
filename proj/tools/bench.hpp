#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace srank::cli {

enum class Kind { ExactStatic, ApproxStatic, ExactSliding, ApproxSliding, NaivePrefix, NaiveRing };

std::string_view to_string(Kind k) noexcept;
Kind parse_kind(const std::string& name);
bool is_sliding(Kind k) noexcept;
bool is_approximate(Kind k) noexcept;

struct BenchRow {
    std::string kind;
    std::uint64_t ell = 0;
    std::uint64_t n = 0;
    std::uint64_t delta = 0;
    std::uint64_t payload_bits = 0;
    double bound_bits = 0;
    double ratio = 0;
    double build_ns = 0;
    double mean_query_ns = 0;
    double p99_query_ns = 0;
    std::string max_observed_error;  // exact decimal
};

inline constexpr std::string_view kCsvHeader =
    "kind,ell,n,delta,payload_bits,bound_bits,ratio,build_ns,mean_query_ns,p99_query_ns,"
    "max_observed_error";

struct BenchConfig {
    std::vector<Kind> kinds;
    std::vector<std::uint64_t> ells{1};
    std::vector<std::uint64_t> deltas{2};
    std::vector<std::uint64_t> sizes{4096};
    std::uint64_t queries = 10000;
    std::uint64_t seed = 1;
    /// Optional value source; generated uniformly when empty.
    std::vector<std::uint64_t> source;
};

/// One row per (kind, ell, delta, n) cell; exact kinds run once per (ell, n)
/// with delta reported as 1. Cells whose parameters a kind rejects are
/// skipped with a line on `notes`.
std::vector<BenchRow> run_bench(const BenchConfig& cfg, std::ostream& notes);

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

struct Timing {
    double mean_ns = 0;
    double p99_ns = 0;
};

namespace detail {
inline volatile std::uint64_t sink;
inline std::uint64_t fold(std::uint64_t v) { return v; }
template <class T>
std::uint64_t fold(const T& v) { return static_cast<std::uint64_t>(v.numerator()); }
} // namespace detail

/// Times f(i) over `indices` after one warm-up pass. Samples are batches of
/// consecutive calls; p99 is taken over per-call batch averages.
template <class F>
Timing time_queries(const std::vector<std::uint64_t>& indices, F&& f, std::size_t batch = 32) {
    using clock = std::chrono::steady_clock;
    std::uint64_t acc = 0;
    for (std::uint64_t i : indices) acc += detail::fold(f(i));
    std::vector<double> samples;
    double total = 0;
    for (std::size_t at = 0; at < indices.size(); at += batch) {
        const std::size_t end = std::min(indices.size(), at + batch);
        const auto t0 = clock::now();
        for (std::size_t k = at; k < end; ++k) acc += detail::fold(f(indices[k]));
        const double ns = std::chrono::duration<double, std::nano>(clock::now() - t0).count();
        total += ns;
        samples.push_back(ns / static_cast<double>(end - at));
    }
    detail::sink = acc;
    Timing t;
    if (samples.empty()) return t;
    t.mean_ns = total / static_cast<double>(indices.size());
    std::sort(samples.begin(), samples.end());
    t.p99_ns = samples[std::min(samples.size() - 1, samples.size() * 99 / 100)];
    return t;
}

} // namespace srank::cli
