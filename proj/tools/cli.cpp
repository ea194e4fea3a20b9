#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "bench.hpp"
#include "source.hpp"
#include "succinct_rank/approx_sliding.hpp"
#include "succinct_rank/approx_static.hpp"
#include "succinct_rank/bounds.hpp"
#include "succinct_rank/errors.hpp"
#include "succinct_rank/estimate.hpp"
#include "succinct_rank/exact_sliding.hpp"
#include "succinct_rank/exact_static.hpp"

namespace srank::cli {

namespace {

using Vec = std::vector<std::uint64_t>;
using Snapshot =
    std::variant<ExactStaticRanker, ApproxStaticRanker, ExactSlidingRanker, ApproxSlidingRanker>;

/// Thrown when a check against the oracle fails; carries the report line.
struct VerifyFailure {
    std::string line;
};

std::string fmt_double(double v, int precision = 6) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(precision) << v;
    return s.str();
}

Estimate as_estimate(std::uint64_t v) { return Estimate(static_cast<__int128>(v), 0); }

Kind snapshot_kind(const Snapshot& s) {
    static constexpr Kind kinds[] = {Kind::ExactStatic, Kind::ApproxStatic, Kind::ExactSliding,
                                     Kind::ApproxSliding};
    return kinds[s.index()];
}

Snapshot load_snapshot(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    char tag[4] = {};
    f.read(tag, 4);
    if (f.gcount() != 4) throw FormatError(path + ": not a ranker snapshot");
    f.seekg(0);
    const std::string t(tag, 4);
    if (t == "SRXS") return ExactStaticRanker::load(f);
    if (t == "SRAS") return ApproxStaticRanker::load(f);
    if (t == "SRXW") return ExactSlidingRanker::load(f);
    if (t == "SRAW") return ApproxSlidingRanker::load(f);
    throw FormatError(path + ": unknown snapshot tag");
}

template <class R>
void save_snapshot(const std::string& path, const R& r) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + path);
    r.save(f);
    f.close();
    if (!f) throw IoError("write failed for " + path);
}

// ---- query requests: "[POS:]I" and "[POS:]T1:T2" ----

struct Request {
    std::uint64_t pos = 0;  // answer after this many values; 0 means at the end
    bool interval = false;
    std::uint64_t a = 0;  // i, or t1
    std::uint64_t b = 0;  // t2
    std::string text;
};

Vec split_numbers(const std::string& s) {
    Vec out;
    std::size_t at = 0;
    for (;;) {
        const std::size_t colon = s.find(':', at);
        const std::string part = s.substr(at, colon == std::string::npos ? colon : colon - at);
        std::uint64_t v = 0;
        const auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc{} || p != part.data() + part.size()) {
            throw ValidationError("malformed request '" + s + "'");
        }
        out.push_back(v);
        if (colon == std::string::npos) return out;
        at = colon + 1;
    }
}

Request parse_request(const std::string& s, bool interval) {
    const Vec v = split_numbers(s);
    Request r;
    r.text = s;
    r.interval = interval;
    const std::size_t want = interval ? 2 : 1;
    if (v.size() != want && v.size() != want + 1) throw ValidationError("malformed request '" + s + "'");
    std::size_t k = 0;
    if (v.size() == want + 1) {
        r.pos = v[k++];
        if (r.pos == 0) throw ValidationError("request position must be at least 1 in '" + s + "'");
    }
    r.a = v[k++];
    if (interval) r.b = v[k];
    return r;
}

// ---- oracle checks ----

struct Tally {
    std::uint64_t checks = 0;
    Estimate worst = Estimate::from_integer(0);
};

// delta == 0 demands equality; otherwise S - delta < got < S.
void check(Tally& t, std::uint64_t i, std::uint64_t truth, const Estimate& got, std::uint64_t delta,
           const std::string& where) {
    ++t.checks;
    const Estimate s = as_estimate(truth);
    Estimate err = s - got;
    if (err < 0) err = Estimate::from_integer(0) - err;
    if (err > t.worst) t.worst = err;
    const bool ok = delta == 0 ? got == s : (got < s && got > s - as_estimate(delta));
    if (ok) return;
    std::string expected = std::to_string(truth);
    if (delta != 0) {
        expected = "(" + to_string_i128(static_cast<__int128>(truth) - delta) + ", " +
                   std::to_string(truth) + ")";
    }
    throw VerifyFailure{"FAIL " + where + " i=" + std::to_string(i) + " expected=" + expected +
                        " got=" + got.to_string()};
}

template <class R>
std::uint64_t check_delta(const R& r) {
    if constexpr (std::is_same_v<R, ApproxStaticRanker> || std::is_same_v<R, ApproxSlidingRanker>) {
        return r.is_exact() ? 0 : r.params().delta;
    } else {
        return 0;
    }
}

template <class R>
Estimate answer(const R& r, std::uint64_t i) {
    if constexpr (std::is_same_v<R, ApproxStaticRanker> || std::is_same_v<R, ApproxSlidingRanker>) {
        return r.query(i);
    } else {
        return as_estimate(r.query(i));
    }
}

template <class R>
void check_static(Tally& t, const R& r, const Vec& x, const std::string& where) {
    std::uint64_t s = 0;
    for (std::uint64_t i = 0; i <= x.size(); ++i) {
        if (i > 0) s += x[i - 1];
        check(t, i, s, answer(r, i), check_delta(r), where);
    }
}

// Every window up to min(count, n) of the current state.
template <class R>
void check_windows(Tally& t, const R& r, const Vec& prefix, std::uint64_t n, const std::string& where) {
    const std::uint64_t c = prefix.size() - 1;
    for (std::uint64_t i = 0; i <= std::min(c, n); ++i) {
        check(t, i, prefix[c] - prefix[c - i], answer(r, i), check_delta(r), where);
    }
}

template <class R>
void check_stream(Tally& t, R& r, const Vec& stream, std::uint64_t n, const std::string& where) {
    Vec prefix{0};
    for (std::uint64_t v : stream) {
        r.add(v);
        prefix.push_back(prefix.back() + v);
        check_windows(t, r, prefix, n, where);
    }
}

// Mix of uniform values and runs pinned at 0 or ell.
Vec random_values(std::mt19937_64& rng, std::size_t len, std::uint64_t ell) {
    std::uniform_int_distribution<std::uint64_t> dist(0, ell);
    Vec v(len);
    std::size_t at = 0;
    while (at < len) {
        const std::size_t run = 1 + rng() % 16;
        const unsigned mode = rng() % 4;
        for (std::size_t k = 0; k < run && at < len; ++k, ++at) {
            v[at] = mode == 0 ? 0 : mode == 1 ? ell : dist(rng);
        }
    }
    return v;
}

// ---- subcommands ----

struct Common {
    std::string kind;
    std::uint64_t ell = 0;
    std::uint64_t n = 0;
    std::uint64_t delta = 1;
    std::string input = "-";
    std::string format = "text";
};

void add_params(CLI::App* app, Common& c, bool need_n = true) {
    app->add_option("--kind", c.kind, "Structure kind")->required();
    app->add_option("--ell", c.ell, "Largest element value")->required();
    auto* n = app->add_option("--n", c.n, "Sequence length or window size");
    if (need_n) n->required();
    app->add_option("--delta", c.delta, "Additive error bound (approximate kinds)");
}

void add_source(CLI::App* app, Common& c) {
    app->add_option("--input", c.input, "Value source, '-' for standard input");
    app->add_option("--format", c.format, "Source format")->check(CLI::IsMember({"text", "binary"}));
}

template <class R>
void print_summary(std::ostream& out, Kind kind, const R& r, const Params& p) {
    const double bound =
        is_approximate(kind) && p.delta > 1 ? lower_bound_bits(p) : exact_bound_bits(p.ell, p.n);
    out << to_string(kind) << " ell=" << p.ell << " n=" << p.n;
    if (is_approximate(kind)) out << " delta=" << p.delta;
    out << " payload_bits=" << r.payload_bits() << " bound_bits=" << fmt_double(bound, 3)
        << " ratio=" << fmt_double(r.bits_ratio()) << '\n';
}

int cmd_build(const Common& c, const std::string& out_path, std::ostream& out) {
    const Kind kind = parse_kind(c.kind);
    if (kind != Kind::ExactStatic && kind != Kind::ApproxStatic) {
        throw ValidationError("build supports exact-static and approx-static; use stream for " +
                              c.kind);
    }
    if (c.n == 0) throw ValidationError("n must be at least 1");
    const Vec x = read_values(c.input, parse_format(c.format), c.ell, c.n);
    const Params p{c.ell, c.n, kind == Kind::ExactStatic ? 1 : c.delta};
    if (kind == Kind::ExactStatic) {
        const auto r = ExactStaticRanker::build(x, c.ell);
        save_snapshot(out_path, r);
        print_summary(out, kind, r, p);
    } else {
        const auto r = ApproxStaticRanker::build(x, c.ell, c.delta);
        save_snapshot(out_path, r);
        if (r.is_exact()) out << "note: delta = 1, values stored exactly\n";
        print_summary(out, kind, r, p);
    }
    out << "wrote " << out_path << '\n';
    return kOk;
}

int cmd_query(const std::string& path, const Vec& indices, std::ostream& out) {
    const Snapshot snap = load_snapshot(path);
    std::visit(
        [&](const auto& r) {
            for (std::uint64_t i : indices) out << answer(r, i).to_string() << '\n';
        },
        snap);
    return kOk;
}

struct StreamArgs {
    Common c;
    bool permissive = false;
    std::vector<std::string> queries;
    std::vector<std::string> intervals;
    std::string out_path;
};

// Strict mode rejects windows longer than the history for both kinds.
std::string answer_request(const ExactSlidingRanker& r, const Request& q, bool permissive) {
    auto one = [&](std::uint64_t i) {
        if (!permissive && i > r.count() && i <= r.window()) {
            throw ValidationError("window " + std::to_string(i) + " exceeds the " +
                                  std::to_string(r.count()) + " values seen so far");
        }
        return r.query(i);
    };
    if (!q.interval) return std::to_string(one(q.a));
    if (q.b > q.a) throw ValidationError("interval needs t2 <= t1 in '" + q.text + "'");
    return std::to_string(one(q.a) - one(q.b));
}

std::string answer_request(const ApproxSlidingRanker& r, const Request& q, bool) {
    return (q.interval ? r.interval(q.a, q.b) : r.query(q.a)).to_string();
}

int cmd_stream(const StreamArgs& a, std::ostream& out) {
    const Kind kind = parse_kind(a.c.kind);
    std::vector<Request> reqs;
    for (const auto& s : a.queries) reqs.push_back(parse_request(s, false));
    for (const auto& s : a.intervals) reqs.push_back(parse_request(s, true));

    auto drive = [&](auto& r) {
        const Format format = parse_format(a.c.format);
        InputFile file(a.c.input, format);
        ValueReader reader(file.stream(), format, a.c.ell);
        std::vector<std::string> answers(reqs.size());
        std::uint64_t v = 0;
        while (reader.next(v)) {
            r.add(v);
            for (std::size_t k = 0; k < reqs.size(); ++k) {
                if (reqs[k].pos == reader.count()) answers[k] = answer_request(r, reqs[k], a.permissive);
            }
        }
        for (std::size_t k = 0; k < reqs.size(); ++k) {
            if (reqs[k].pos > reader.count()) {
                throw ValidationError("request '" + reqs[k].text + "' is past the end of the stream (" +
                                      std::to_string(reader.count()) + " values)");
            }
            if (reqs[k].pos == 0) answers[k] = answer_request(r, reqs[k], a.permissive);
        }
        for (const auto& s : answers) out << s << '\n';
        if (!a.out_path.empty()) save_snapshot(a.out_path, r);
    };

    if (kind == Kind::ExactSliding) {
        ExactSlidingRanker r(a.c.ell, a.c.n);
        drive(r);
    } else if (kind == Kind::ApproxSliding) {
        SlidingOptions opts;
        opts.permissive = a.permissive;
        ApproxSlidingRanker r({a.c.ell, a.c.n, a.c.delta}, opts);
        drive(r);
    } else {
        throw ValidationError("stream supports exact-sliding and approx-sliding, not " + a.c.kind);
    }
    return kOk;
}

struct VerifyArgs {
    Common c;
    std::uint64_t trials = 20;
    std::uint64_t seed = 1;
    bool exhaustive = false;
    std::string snapshot;
};

// Calls f on every sequence in [0, ell]^len.
template <class F>
void for_each_sequence(std::uint64_t ell, std::size_t len, F&& f) {
    Vec x(len, 0);
    for (;;) {
        f(x);
        std::size_t k = 0;
        while (k < len && x[k] == ell) x[k++] = 0;
        if (k == len) return;
        ++x[k];
    }
}

std::string describe(Kind kind, const Params& p) {
    std::string s = "kind=" + std::string(to_string(kind)) + " ell=" + std::to_string(p.ell) +
                    " n=" + std::to_string(p.n);
    if (is_approximate(kind)) s += " delta=" + std::to_string(p.delta);
    return s;
}

int verify_snapshot(const VerifyArgs& a, std::ostream& out) {
    const Snapshot snap = load_snapshot(a.snapshot);
    const Kind kind = snapshot_kind(snap);
    if (!a.c.kind.empty() && parse_kind(a.c.kind) != kind) {
        throw ValidationError("snapshot holds " + std::string(to_string(kind)) + ", not " + a.c.kind);
    }
    Tally t;
    std::string head;
    std::visit(
        [&](const auto& r) {
            using R = std::decay_t<decltype(r)>;
            const Format format = parse_format(a.c.format);
            if constexpr (std::is_same_v<R, ExactStaticRanker>) {
                head = describe(kind, {r.ell(), r.size(), 1});
                check_static(t, r, read_values(a.c.input, format, r.ell(), r.size()), head);
            } else if constexpr (std::is_same_v<R, ApproxStaticRanker>) {
                head = describe(kind, r.params());
                check_static(t, r, read_values(a.c.input, format, r.params().ell, r.params().n), head);
            } else {
                std::uint64_t ell = 0, n = 0;
                if constexpr (std::is_same_v<R, ExactSlidingRanker>) {
                    ell = r.ell();
                    n = r.window();
                    head = describe(kind, {ell, n, 1});
                } else {
                    ell = r.params().ell;
                    n = r.params().n;
                    head = describe(kind, r.params());
                }
                const Vec stream = read_values(a.c.input, format, ell);
                if (stream.size() != r.count()) {
                    throw VerifyFailure{"FAIL " + head + " snapshot has seen " +
                                        std::to_string(r.count()) + " values, input has " +
                                        std::to_string(stream.size())};
                }
                Vec prefix{0};
                for (std::uint64_t v : stream) prefix.push_back(prefix.back() + v);
                check_windows(t, r, prefix, n, head);
            }
        },
        snap);
    out << "PASS " << head << " snapshot=" << a.snapshot << " checks=" << t.checks
        << " max_observed_error=" << t.worst.to_string() << '\n';
    return kOk;
}

constexpr std::uint64_t kMaxExhaustive = std::uint64_t{1} << 22;

int verify_generated(const VerifyArgs& a, std::ostream& out) {
    const Kind kind = parse_kind(a.c.kind);
    if (kind == Kind::NaivePrefix || kind == Kind::NaiveRing) {
        throw ValidationError("verify covers the four ranker kinds");
    }
    const Params p{a.c.ell, a.c.n, is_approximate(kind) ? a.c.delta : 1};
    validate(p);
    const std::string head = describe(kind, p);
    const std::size_t len = is_sliding(kind) ? (a.exhaustive ? 2 : 3) * p.n : p.n;

    Tally t;
    auto run_case = [&](const Vec& x, std::uint64_t k) {
        const std::string where = head + " case=" + std::to_string(k);
        switch (kind) {
        case Kind::ExactStatic: check_static(t, ExactStaticRanker::build(x, p.ell), x, where); break;
        case Kind::ApproxStatic:
            check_static(t, ApproxStaticRanker::build(x, p.ell, p.delta), x, where);
            break;
        case Kind::ExactSliding: {
            ExactSlidingRanker r(p.ell, p.n);
            check_stream(t, r, x, p.n, where);
            break;
        }
        case Kind::ApproxSliding: {
            ApproxSlidingRanker r(p);
            check_stream(t, r, x, p.n, where);
            break;
        }
        default: break;
        }
    };

    std::uint64_t cases = 0;
    if (a.exhaustive) {
        // (ell+1)^len, refusing anything past the cap.
        std::uint64_t total = 1;
        for (std::size_t k = 0; k < len; ++k) {
            if (total > kMaxExhaustive / (p.ell + 1)) {
                throw ValidationError("exhaustive run needs more than " +
                                      std::to_string(kMaxExhaustive) + " sequences");
            }
            total *= p.ell + 1;
        }
        for_each_sequence(p.ell, len, [&](const Vec& x) { run_case(x, ++cases); });
    } else {
        std::mt19937_64 rng(a.seed);
        for (std::uint64_t k = 0; k < a.trials; ++k) run_case(random_values(rng, len, p.ell), ++cases);
    }
    out << "PASS " << head << (a.exhaustive ? " exhaustive" : " seed=" + std::to_string(a.seed))
        << " cases=" << cases << " checks=" << t.checks
        << " max_observed_error=" << t.worst.to_string() << '\n';
    return kOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    try {
        return a.snapshot.empty() ? verify_generated(a, out) : verify_snapshot(a, out);
    } catch (const VerifyFailure& f) {
        out << f.line << '\n';
        return kVerifyFailed;
    }
}

struct BenchArgs {
    std::vector<std::string> kinds;
    Vec ells{1};
    Vec deltas{2};
    Vec sizes{4096, 65536};
    std::uint64_t queries = 10000;
    std::uint64_t seed = 1;
    std::string input;
    std::string format = "text";
    std::string out_path = "-";
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
    BenchConfig cfg;
    for (const auto& k : a.kinds) cfg.kinds.push_back(parse_kind(k));
    if (cfg.kinds.empty()) {
        cfg.kinds = {Kind::ExactStatic, Kind::ApproxStatic, Kind::ExactSliding,
                     Kind::ApproxSliding, Kind::NaivePrefix, Kind::NaiveRing};
    }
    cfg.ells = a.ells;
    cfg.deltas = a.deltas;
    cfg.sizes = a.sizes;
    cfg.queries = a.queries;
    cfg.seed = a.seed;
    for (std::uint64_t n : cfg.sizes) {
        if (n == 0) throw ValidationError("sizes must be positive");
    }
    if (!a.input.empty()) {
        const std::uint64_t top = *std::max_element(cfg.ells.begin(), cfg.ells.end());
        cfg.source = read_values(a.input, parse_format(a.format), top);
    }
    const auto rows = run_bench(cfg, err);
    if (a.out_path == "-") {
        write_csv(out, rows);
    } else {
        std::ofstream f(a.out_path);
        if (!f) throw IoError("cannot write " + a.out_path);
        write_csv(f, rows);
        if (!f) throw IoError("write failed for " + a.out_path);
    }
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Prefix-sum rankers over bounded integer sequences and streams", "srank"};
    app.require_subcommand(1);

    Common build_c;
    std::string build_out;
    auto* build = app.add_subcommand("build", "Build a static ranker and save it");
    add_params(build, build_c);
    add_source(build, build_c);
    build->add_option("--out", build_out, "Snapshot path")->required();

    std::string query_path;
    Vec query_i;
    auto* query = app.add_subcommand("query", "Answer rank or window queries from a snapshot");
    query->add_option("snapshot", query_path, "Snapshot path")->required();
    query->add_option("-i,--i", query_i, "Query index (repeatable)")->required();

    StreamArgs sa;
    auto* stream = app.add_subcommand("stream", "Feed a stream into a sliding ranker and answer queries");
    add_params(stream, sa.c);
    add_source(stream, sa.c);
    stream->add_flag("--permissive,!--strict", sa.permissive,
                     "Allow windows longer than the values seen so far");
    stream->add_option("--query", sa.queries, "[POS:]I, window i after POS values (default: end)");
    stream->add_option("--interval", sa.intervals, "[POS:]T1:T2, sum of the window between t2 and t1");
    stream->add_option("--out", sa.out_path, "Save the final state to this snapshot");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Check a structure against the brute-force oracle");
    verify->add_option("--kind", va.c.kind, "Structure kind");
    verify->add_option("--ell", va.c.ell, "Largest element value");
    verify->add_option("--n", va.c.n, "Sequence length or window size");
    verify->add_option("--delta", va.c.delta, "Additive error bound");
    verify->add_option("--trials", va.trials, "Random cases");
    verify->add_option("--seed", va.seed, "Random seed");
    verify->add_flag("--exhaustive", va.exhaustive, "Enumerate every input instead of sampling");
    verify->add_option("--snapshot", va.snapshot, "Check this snapshot against --input");
    add_source(verify, va.c);

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "Space and latency report as CSV");
    bench->add_option("--kind", ba.kinds, "Kinds to run (default: all, with naive baselines)")
        ->delimiter(',');
    bench->add_option("--ell", ba.ells, "ell values")->delimiter(',');
    bench->add_option("--delta", ba.deltas, "delta values for approximate kinds")->delimiter(',');
    bench->add_option("--n", ba.sizes, "Sizes")->delimiter(',');
    bench->add_option("--queries,--trials", ba.queries, "Timed queries per cell");
    bench->add_option("--seed", ba.seed, "Random seed");
    bench->add_option("--input", ba.input, "Value source instead of generated data");
    bench->add_option("--format", ba.format, "Source format")->check(CLI::IsMember({"text", "binary"}));
    bench->add_option("--out", ba.out_path, "CSV path, '-' for standard output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (*build) return cmd_build(build_c, build_out, out);
        if (*query) return cmd_query(query_path, query_i, out);
        if (*stream) return cmd_stream(sa, out);
        if (*verify) {
            if (va.snapshot.empty() && (va.c.kind.empty() || va.c.ell == 0 || va.c.n == 0)) {
                throw ValidationError("verify needs --kind, --ell and --n, or --snapshot");
            }
            return cmd_verify(va, out);
        }
        if (*bench) return cmd_bench(ba, out, err);
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::invalid_argument& e) {  // ValidationError
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    }
    return kValidation;
}

} // namespace srank::cli
