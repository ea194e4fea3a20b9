#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bench.hpp"
#include "cli.hpp"
#include "doctest.h"
#include "source.hpp"
#include "succinct_rank/errors.hpp"

using namespace srank;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("srank_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content = {}) const {
        const fs::path p = path / name;
        if (!content.empty()) std::ofstream(p, std::ios::binary) << content;
        return p.string();
    }
};

std::string text_values(const std::vector<std::uint64_t>& v) {
    std::string s;
    for (auto x : v) s += std::to_string(x) + "\n";
    return s;
}

} // namespace

TEST_CASE("value reader") {
    std::istringstream text("3\n\n 7 \r\n0\n");
    cli::ValueReader r(text, cli::Format::Text, 9);
    std::uint64_t v = 0;
    std::vector<std::uint64_t> got;
    while (r.next(v)) got.push_back(v);
    CHECK(got == std::vector<std::uint64_t>{3, 7, 0});

    std::istringstream bad("1\n2\n11\n");
    cli::ValueReader rb(bad, cli::Format::Text, 9);
    rb.next(v);
    rb.next(v);
    try {
        rb.next(v);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }

    std::istringstream junk("4x\n");
    cli::ValueReader rj(junk, cli::Format::Text, 9);
    CHECK_THROWS_AS(rj.next(v), ValidationError);

    std::string bin(8, '\0');
    bin[0] = 5;
    bin += std::string(3, '\0');  // truncated second value
    std::istringstream b(bin);
    cli::ValueReader rbin(b, cli::Format::Binary, 9);
    CHECK(rbin.next(v));
    CHECK(v == 5);
    CHECK_THROWS_AS(rbin.next(v), FormatError);
}

TEST_CASE("build and query") {
    TempDir dir;
    const std::string in = dir.file("x.txt", "10\n0\n7\n3\n");
    const std::string snap = dir.file("a.snap");
    Result b = run({"build", "--kind", "approx-static", "--ell", "10", "--n", "4", "--delta", "5",
                    "--input", in, "--out", snap});
    REQUIRE(b.code == 0);
    CHECK(b.out.find("payload_bits=") != std::string::npos);
    CHECK(b.out.find("ratio=") != std::string::npos);

    Result q = run({"query", snap, "-i", "2", "-i", "4", "-i", "0"});
    CHECK(q.code == 0);
    CHECK(lines(q.out) == std::vector<std::string>{"5.5", "15.5", "-0.5"});
    CHECK(run({"query", snap, "-i", "5"}).code == cli::kValidation);

    const std::string e = dir.file("e.txt", "3\n1\n4\n1\n5\n");
    const std::string esnap = dir.file("e.snap");
    REQUIRE(run({"build", "--kind", "exact-static", "--ell", "9", "--n", "5", "--input", e, "--out",
                 esnap})
                .code == 0);
    CHECK(lines(run({"query", esnap, "-i", "0", "-i", "3"}).out) ==
          std::vector<std::string>{"0", "8"});
}

TEST_CASE("build errors") {
    TempDir dir;
    const std::string in = dir.file("x.txt", "11\n1\n");
    Result r = run({"build", "--kind", "exact-static", "--ell", "9", "--n", "2", "--input", in,
                    "--out", dir.file("o.snap")});
    CHECK(r.code == cli::kValidation);
    CHECK(r.err.find("line 1") != std::string::npos);

    const std::string shortf = dir.file("s.txt", "1\n");
    CHECK(run({"build", "--kind", "exact-static", "--ell", "9", "--n", "2", "--input", shortf,
               "--out", dir.file("o.snap")})
              .code == cli::kValidation);
    CHECK(run({"build", "--kind", "exact-static", "--ell", "9", "--n", "2", "--input",
               dir.file("missing.txt"), "--out", dir.file("o.snap")})
              .code == cli::kIo);
    CHECK(run({"build", "--ell", "9"}).code == cli::kValidation);

    const std::string ok = dir.file("ok.txt", "1\n2\n");
    Result fb = run({"build", "--kind", "approx-static", "--ell", "9", "--n", "2", "--delta", "1",
                     "--input", ok, "--out", dir.file("f.snap")});
    CHECK(fb.code == 0);
    CHECK(fb.out.find("stored exactly") != std::string::npos);
}

TEST_CASE("stream queries and intervals") {
    TempDir dir;
    const std::string in = dir.file("s.txt", "5\n2\n7\n1\n3\n");
    Result r = run({"stream", "--kind", "exact-sliding", "--ell", "9", "--n", "4", "--input", in,
                    "--query", "3", "--query", "2:2", "--interval", "4:1"});
    CHECK(r.code == 0);
    CHECK(lines(r.out) == std::vector<std::string>{"11", "7", "10"});

    // Strict mode refuses windows longer than the history.
    Result strict = run({"stream", "--kind", "exact-sliding", "--ell", "9", "--n", "4", "--input",
                         in, "--query", "1:2"});
    CHECK(strict.code == cli::kValidation);
    Result loose = run({"stream", "--kind", "exact-sliding", "--ell", "9", "--n", "4", "--input",
                        in, "--query", "1:2", "--permissive"});
    CHECK(loose.code == 0);
    CHECK(lines(loose.out) == std::vector<std::string>{"5"});
    CHECK(run({"stream", "--kind", "approx-sliding", "--ell", "9", "--n", "8", "--delta", "5",
               "--input", in, "--query", "1:2"})
              .code == cli::kValidation);
    CHECK(run({"stream", "--kind", "exact-sliding", "--ell", "9", "--n", "4", "--input", in,
               "--query", "9:1"})
              .code == cli::kValidation);
    CHECK(run({"stream", "--kind", "exact-sliding", "--ell", "9", "--n", "4", "--input", in,
               "--query", "x"})
              .code == cli::kValidation);
}

TEST_CASE("approximate stream intervals stay within 2 delta") {
    TempDir dir;
    std::mt19937_64 rng(3);
    std::vector<std::uint64_t> v(300);
    for (auto& x : v) x = rng() % 11;
    const std::string in = dir.file("s.txt", text_values(v));
    std::vector<std::string> args = {"stream", "--kind", "approx-sliding", "--ell", "10", "--n",
                                     "64", "--delta", "12", "--input", in};
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (int k = 0; k < 50; ++k) {
        std::uint64_t t1 = rng() % 65, t2 = rng() % 65;
        if (t1 < t2) std::swap(t1, t2);
        pairs.push_back({t1, t2});
        args.push_back("--interval");
        args.push_back(std::to_string(t1) + ":" + std::to_string(t2));
    }
    Result r = run(args);
    REQUIRE(r.code == 0);
    const auto out = lines(r.out);
    REQUIRE(out.size() == pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        std::uint64_t truth = 0;
        for (std::uint64_t d = v.size() - pairs[k].first; d < v.size() - pairs[k].second; ++d) truth += v[d];
        const double got = std::stod(out[k]);
        CHECK(got < static_cast<double>(truth) + 24);
        CHECK(got > static_cast<double>(truth) - 24);
    }
}

TEST_CASE("verify passes and catches corruption") {
    CHECK(run({"verify", "--kind", "exact-static", "--ell", "2", "--n", "8", "--exhaustive"}).code == 0);
    Result a = run({"verify", "--kind", "approx-sliding", "--ell", "10", "--n", "64", "--delta",
                    "30", "--trials", "5", "--seed", "7"});
    CHECK(a.code == 0);
    CHECK(a.out.rfind("PASS", 0) == 0);
    CHECK(a.out.find("max_observed_error=") != std::string::npos);
    // Fixed seed gives the same report.
    CHECK(run({"verify", "--kind", "approx-sliding", "--ell", "10", "--n", "64", "--delta", "30",
               "--trials", "5", "--seed", "7"})
              .out == a.out);
    CHECK(run({"verify", "--kind", "approx-static", "--ell", "3", "--n", "5", "--delta", "4",
               "--exhaustive"})
              .code == 0);
    CHECK(run({"verify", "--kind", "exact-sliding", "--ell", "1", "--n", "5", "--exhaustive"}).code == 0);
    CHECK(run({"verify", "--kind", "exact-static", "--ell", "100", "--n", "100", "--exhaustive"})
              .code == cli::kValidation);

    TempDir dir;
    std::mt19937_64 rng(11);
    std::vector<std::uint64_t> x(300);
    for (auto& v : x) v = rng() % 11;
    const std::string in = dir.file("x.txt", text_values(x));
    const std::string snap = dir.file("e.snap");
    REQUIRE(run({"build", "--kind", "exact-static", "--ell", "10", "--n", "300", "--input", in,
                 "--out", snap})
                .code == 0);
    CHECK(run({"verify", "--snapshot", snap, "--input", in}).code == 0);

    std::string bytes;
    {
        std::ifstream f(snap, std::ios::binary);
        bytes.assign(std::istreambuf_iterator<char>(f), {});
    }
    // Flip a bit inside the packed chunk totals, past the header.
    bytes[100] ^= 0x10;
    const std::string bad = dir.file("bad.snap", bytes);
    Result f = run({"verify", "--snapshot", bad, "--input", in});
    CHECK(f.code == cli::kVerifyFailed);
    CHECK(f.out.rfind("FAIL", 0) == 0);
    CHECK(f.out.find(" i=") != std::string::npos);
    CHECK(f.out.find(" expected=") != std::string::npos);
    CHECK(f.out.find(" got=") != std::string::npos);
}

TEST_CASE("stream snapshots verify against their input") {
    TempDir dir;
    const std::string in = dir.file("s.txt", text_values({4, 0, 9, 9, 1, 2, 3, 8, 8, 0}));
    const std::string snap = dir.file("w.snap");
    REQUIRE(run({"stream", "--kind", "approx-sliding", "--ell", "9", "--n", "8", "--delta", "6",
                 "--input", in, "--out", snap})
                .code == 0);
    CHECK(run({"verify", "--snapshot", snap, "--input", in}).code == 0);
    const std::string other = dir.file("o.txt", text_values({4, 0, 9}));
    CHECK(run({"verify", "--snapshot", snap, "--input", other}).code == cli::kVerifyFailed);
    CHECK(run({"query", snap, "-i", "3"}).code == 0);
}

TEST_CASE("bench csv") {
    Result r = run({"bench", "--kind", "exact-static,approx-static,approx-sliding,naive-prefix,naive-ring",
                    "--ell", "10", "--delta", "30", "--n", "256,1024", "--queries", "200"});
    REQUIRE(r.code == 0);
    const auto out = lines(r.out);
    REQUIRE(!out.empty());
    CHECK(out[0] == std::string(cli::kCsvHeader));
    CHECK(out.size() == 1 + 5 * 2);
    for (std::size_t k = 1; k < out.size(); ++k) {
        std::vector<std::string> cols;
        std::istringstream row(out[k]);
        for (std::string c; std::getline(row, c, ',');) cols.push_back(c);
        REQUIRE(cols.size() == 11);
        const bool approx = cols[0].rfind("approx", 0) == 0;
        const double err = std::stod(cols[10]);
        if (approx) {
            CHECK(err < 30);
        } else {
            CHECK(err == 0);
        }
    }
    CHECK(run({"bench", "--kind", "bogus"}).code == cli::kValidation);
}
