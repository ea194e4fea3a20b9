#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "succinct_rank/bounds.hpp"
#include "succinct_rank/errors.hpp"

using namespace srank;

TEST_CASE("lower bound formula") {
    CHECK(lower_bound_bits({1, 8, 2}) == doctest::Approx(4.0));
    CHECK(lower_bound_bits({100, 1000, 10}) == doctest::Approx(1000 * std::log2(11.0)));
    CHECK(lower_bound_bits({100, 1000, 10}) == doctest::Approx(3459.43).epsilon(1e-5));
    for (std::uint64_t k = 2; k < 50; ++k) CHECK(lower_bound_bits({k, k, k}) == doctest::Approx(k));
    CHECK_THROWS_AS(lower_bound_bits({1, 8, 1}), ValidationError);
    CHECK_THROWS_AS(lower_bound_bits({1, 8, 9}), ValidationError);
}

TEST_CASE("exact bound formula") {
    CHECK(exact_bound_bits(1, 64) == 64.0);
    CHECK(exact_bound_bits(7, 10) == 30.0);
    CHECK(exact_bound_bits(100, 1000) == doctest::Approx(6658.2).epsilon(1e-5));
}

TEST_CASE("lower bound never exceeds exact bound") {
    for (std::uint64_t ell : {1u, 2u, 3u, 10u, 100u}) {
        for (std::uint64_t n : {1u, 2u, 7u, 64u, 1000u}) {
            for (std::uint64_t delta = 2; delta <= ell * n; delta += 1 + delta / 3) {
                CHECK(lower_bound_bits({ell, n, delta}) <= exact_bound_bits(ell, n) + 1e-9);
            }
        }
    }
}

TEST_CASE("static parameters") {
    const StaticDerived a = derive_static({10, 4, 5});
    CHECK(a.mu_num == 5);
    CHECK(a.mu_den == 10);
    CHECK(a.nu == 1);
    CHECK(a.s == 4);
    CHECK(a.z == 2);

    const StaticDerived b = derive_static({2, 100, 6});
    CHECK(b.nu == 3);
    CHECK(b.s == 33);
    CHECK(b.z == 1);

    // mu = 2.5: nu*ell/delta = 4/5 is not an integer, so z and its ceiling differ.
    const StaticDerived c = derive_static({2, 5, 5});
    CHECK(c.nu == 2);
    CHECK(c.z == 0);
    CHECK(c.z_cap == 1);

    for (std::uint64_t ell = 1; ell <= 12; ++ell) {
        for (std::uint64_t n = 1; n <= 12; ++n) {
            for (std::uint64_t delta = 1; delta <= ell * n; ++delta) {
                const StaticDerived d = derive_static({ell, n, delta});
                CHECK(d.nu * d.s <= n);
                CHECK(n < d.nu * (d.s + 1));
                CHECK(d.z * delta <= d.nu * ell);
                CHECK(d.nu * ell < (d.z + 1) * delta + delta);
                CHECK(d.z_cap * delta >= d.nu * ell);
            }
        }
    }
}

TEST_CASE("sliding parameters") {
    const SlidingDerived a = derive_sliding({100, 1024, 10});
    CHECK(a.sens == 9);
    CHECK(a.nu == 1);
    CHECK(a.b == 17);
    CHECK(a.s == 1024);
    CHECK(a.z_cap == 12);  // floor(108 / 9)
    CHECK_FALSE(a.exact_fallback);

    // Non power of two n goes through the multiprecision path.
    const SlidingDerived b = derive_sliding({100, 1000, 10});
    // log2(1000) ~ 9.9658: sens = floor(10 * 0.89966) = 8.
    CHECK(b.sens == 8);
    // 1000*100*9.9658/10 ~ 99658 -> 2^17 = 131072.
    CHECK(b.b == 17);

    CHECK(derive_sliding({1, 64, 1}).exact_fallback);
    CHECK(derive_sliding({10, 16, 2}).exact_fallback);  // sens = floor(1.5) = 1
    CHECK_THROWS_AS(derive_sliding({1, 3, 2}), ValidationError);

    for (std::uint64_t ell : {1u, 2u, 10u, 100u}) {
        for (std::uint64_t n : {4u, 5u, 7u, 64u, 100u, 1000u, 4096u}) {
            for (std::uint64_t delta = 2; delta <= ell * n; delta = delta * 3 / 2 + 1) {
                const Params p{ell, n, delta};
                const SlidingDerived d = derive_sliding(p);
                const double L = std::log2(static_cast<double>(n));
                CHECK(d.sens < delta);
                CHECK(d.nu <= std::max<std::uint64_t>(delta / ell, 1));
                CHECK(d.s * d.nu >= n);
                CHECK(std::ldexp(1.0, static_cast<int>(d.b)) >= n * ell * L / delta * (1 - 1e-12));
                if (d.b > 1) {
                    CHECK(std::ldexp(1.0, static_cast<int>(d.b - 1)) < n * ell * L / delta * (1 + 1e-12));
                }
                if (!d.exact_fallback) CHECK(d.z_cap >= d.nu * ell / d.sens);
            }
        }
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(validate({0, 4, 1}), ValidationError);
    CHECK_THROWS_AS(validate({1, 0, 1}), ValidationError);
    CHECK_THROWS_AS(validate({1, 4, 0}), ValidationError);
    CHECK_THROWS_AS(validate({1, 4, 5}), ValidationError);
    CHECK_THROWS_AS(validate({std::uint64_t{1} << 40, std::uint64_t{1} << 30, 1}), CapacityError);
}

TEST_CASE("oracles") {
    const std::vector<std::uint64_t> x{3, 1, 4, 1, 5};
    CHECK(oracle_prefix_sum(x, 3) == 8);
    CHECK(oracle_prefix_sum(x, 0) == 0);
    const std::vector<std::uint64_t> c(9, 7);
    CHECK(oracle_prefix_sum(c, 9) == 63);
    const std::vector<std::uint64_t> s{5, 2, 7, 1, 3};
    CHECK(oracle_window_sum(s, 3) == 11);
    CHECK(oracle_window_sum(s, 0) == 0);
    CHECK(oracle_window_sum(s, 5) == 18);
}

TEST_CASE("adversarial family") {
    using Seq = std::vector<std::uint64_t>;
    const auto fam = adversarial_inputs({1, 4, 2}, 100);
    CHECK(std::set<Seq>(fam.begin(), fam.end()) ==
          std::set<Seq>{{0, 0, 0, 0}, {0, 0, 1, 1}, {1, 1, 0, 0}, {1, 1, 1, 1}});

    const auto fam2 = adversarial_inputs({10, 2, 5}, 100);
    CHECK(fam2.size() == 9);
    CHECK(std::set<Seq>(fam2.begin(), fam2.end()).size() == 9);
    for (const Seq& q : fam2) {
        CHECK(q.size() == 2);
        for (auto v : q) CHECK((v == 0 || v == 5 || v == 10));
    }

    // Padding and the first-differing-boundary gap.
    const Params p{3, 7, 5};
    const auto fam3 = adversarial_inputs(p, 1000);
    const std::uint64_t block = adversarial_block_len(p);
    CHECK(block == 2);
    for (const Seq& q : fam3) {
        CHECK(q.size() == 7);
        CHECK(q[6] == 0);
        for (auto v : q) CHECK(v <= 3);
    }
    for (std::size_t a = 0; a < fam3.size(); ++a) {
        for (std::size_t b = a + 1; b < fam3.size(); ++b) {
            std::size_t j = 0;
            while (fam3[a][j * block] == fam3[b][j * block]) ++j;
            const std::uint64_t sa = oracle_prefix_sum(fam3[a], (j + 1) * block);
            const std::uint64_t sb = oracle_prefix_sum(fam3[b], (j + 1) * block);
            CHECK((sa > sb ? sa - sb : sb - sa) >= p.delta);
        }
    }
}
