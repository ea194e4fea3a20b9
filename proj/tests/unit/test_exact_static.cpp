#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "succinct_rank/bounds.hpp"
#include "succinct_rank/errors.hpp"
#include "succinct_rank/exact_static.hpp"
#include "test_support.hpp"

using namespace srank;
using Vec = std::vector<std::uint64_t>;

namespace {

BuildOptions pinned(Strategy s, std::uint64_t cl, std::uint64_t sl) {
    BuildOptions o;
    o.strategy = s;
    o.chunk_len = cl;
    o.sub_len = sl;
    return o;
}

void check_all_prefixes(const ExactStaticRanker& r, const Vec& x) {
    std::uint64_t s = 0;
    REQUIRE(r.query(0) == 0);
    for (std::size_t i = 1; i <= x.size(); ++i) {
        s += x[i - 1];
        REQUIRE(r.query(i) == s);
    }
}

} // namespace

TEST_CASE("aggregates of the worked example") {
    const Vec x{3, 1, 4, 1, 5, 9, 2, 6};
    for (Strategy st : {Strategy::LookupTable, Strategy::Cumulative}) {
        const auto r = ExactStaticRanker::build(x, 9, pinned(st, 4, 2));
        CHECK(r.chunk_sums().size() == 2);
        CHECK(r.chunk_sums().get(0) == 9);
        CHECK(r.chunk_sums().get(1) == 31);
        REQUIRE(r.sub_sums().size() == 4);
        CHECK(r.sub_sums().get(0) == 4);
        CHECK(r.sub_sums().get(1) == 9);
        CHECK(r.sub_sums().get(2) == 14);
        CHECK(r.sub_sums().get(3) == 22);
        check_all_prefixes(r, x);
    }
}

TEST_CASE("basic queries") {
    const Vec x{3, 1, 4, 1, 5};
    const auto r = ExactStaticRanker::build(x, 5);
    CHECK(r.query(0) == 0);
    CHECK(r.query(3) == 8);
    CHECK(r.query(5) == 14);
    CHECK_THROWS_AS(r.query(6), std::out_of_range);
}

TEST_CASE("all-zero input gives all-zero aggregates") {
    const Vec x(300, 0);
    for (Strategy st : {Strategy::LookupTable, Strategy::Cumulative}) {
        BuildOptions o;
        o.strategy = st;
        const auto r = ExactStaticRanker::build(x, 7, o);
        for (std::size_t j = 0; j < r.chunk_sums().size(); ++j) CHECK(r.chunk_sums().get(j) == 0);
        for (std::size_t j = 0; j < r.sub_sums().size(); ++j) CHECK(r.sub_sums().get(j) == 0);
        CHECK(r.query(300) == 0);
    }
}

TEST_CASE("exhaustive over [0,2]^6 with several layouts") {
    std::size_t built = 0;
    testing::for_each_sequence(2, 6, [&](const Vec& x) {
        for (Strategy st : {Strategy::LookupTable, Strategy::Cumulative}) {
            for (auto [cl, sl] : {std::pair{4, 2}, {2, 1}, {6, 3}, {3, 3}, {8, 4}}) {
                check_all_prefixes(ExactStaticRanker::build(x, 2, pinned(st, cl, sl)), x);
                ++built;
            }
        }
        check_all_prefixes(ExactStaticRanker::build(x, 2), x);
    });
    CHECK(built == 729 * 10);
}

TEST_CASE("validation errors") {
    CHECK_THROWS_AS(ExactStaticRanker::build(Vec{}, 3), ValidationError);
    CHECK_THROWS_WITH_AS(ExactStaticRanker::build(Vec{1, 11}, 9), doctest::Contains("position 2"),
                         ValidationError);
    CHECK_THROWS_AS(ExactStaticRanker::build(Vec{1, 2}, 0), ValidationError);
    CHECK_THROWS_AS(ExactStaticRanker::build(Vec{1, 2}, 3, pinned(Strategy::Cumulative, 4, 3)),
                    ValidationError);
    BuildOptions big_lookup;
    big_lookup.strategy = Strategy::LookupTable;
    CHECK_THROWS_AS(ExactStaticRanker::build(Vec{1}, std::uint64_t{1} << 40, big_lookup),
                    ValidationError);
}

TEST_CASE("strategy equivalence, monotonicity and element access") {
    std::mt19937_64 rng(11);
    for (std::uint64_t ell : {1u, 3u, 15u, 255u}) {
        for (std::size_t n : {1u, 2u, 17u, 100u, 1000u}) {
            const Vec x = testing::skewed_values(rng, n, ell);
            BuildOptions a, b;
            a.strategy = Strategy::LookupTable;
            b.strategy = Strategy::Cumulative;
            const auto ra = ExactStaticRanker::build(x, ell, a);
            const auto rb = ExactStaticRanker::build(x, ell, b);
            for (std::size_t i = 0; i <= n; ++i) {
                REQUIRE(ra.query(i) == rb.query(i));
                if (i < n) {
                    REQUIRE(ra.query(i) <= ra.query(i + 1));
                    REQUIRE(ra.query(i + 1) <= ra.query(i) + ell);
                    REQUIRE(ra.element(i) == x[i]);
                    REQUIRE(rb.element(i) == x[i]);
                }
            }
        }
    }
}

TEST_CASE("randomized at scale with wide values") {
    std::mt19937_64 rng(5);
    for (std::uint64_t ell : {std::uint64_t{1}, std::uint64_t{255}, std::uint64_t{1} << 40}) {
        const Vec x = testing::random_values(rng, 100000, ell);
        const auto r = ExactStaticRanker::build(x, ell);
        Vec prefix(x.size() + 1, 0);
        for (std::size_t d = 0; d < x.size(); ++d) prefix[d + 1] = prefix[d] + x[d];
        for (int t = 0; t < 1000; ++t) {
            const std::size_t i = rng() % (x.size() + 1);
            REQUIRE(r.query(i) == prefix[i]);
        }
        CHECK(r.query(x.size()) == prefix.back());
    }
}

TEST_CASE("automatic layout") {
    const Vec x(1 << 16, 1);
    const auto r = ExactStaticRanker::build(x, 1);
    CHECK(r.layout().chunk_len % r.layout().sub_len == 0);
    CHECK(r.bits_ratio() < 1.5);
    CHECK(r.payload_bits() >= exact_bound_bits(1, 1 << 16));
}

TEST_CASE("serialization roundtrip and corruption") {
    std::mt19937_64 rng(2);
    const Vec x = testing::random_values(rng, 777, 12);
    for (Strategy st : {Strategy::LookupTable, Strategy::Cumulative}) {
        BuildOptions o;
        o.strategy = st;
        const auto r = ExactStaticRanker::build(x, 12, o);
        std::stringstream ss;
        r.save(ss);
        const std::string bytes = ss.str();
        const auto back = ExactStaticRanker::load(ss);
        CHECK(back == r);
        check_all_prefixes(back, x);

        std::stringstream bad_magic("XXXX" + bytes.substr(4));
        CHECK_THROWS_AS(ExactStaticRanker::load(bad_magic), FormatError);
        std::stringstream truncated(bytes.substr(0, bytes.size() / 2));
        CHECK_THROWS_AS(ExactStaticRanker::load(truncated), FormatError);
    }
}

TEST_CASE("automatic layouts survive a snapshot roundtrip") {
    std::mt19937_64 rng(37);
    for (std::uint64_t ell : {1, 2, 3, 7, 10, 100}) {
        for (std::size_t n : {5, 21, 64, 300, 5000, 70000}) {
            const auto r = ExactStaticRanker::build(testing::random_values(rng, n, ell), ell);
            std::stringstream buf;
            r.save(buf);
            REQUIRE(ExactStaticRanker::load(buf) == r);
        }
    }
}
