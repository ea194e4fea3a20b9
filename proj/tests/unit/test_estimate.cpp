#include "doctest.h"
#include "succinct_rank/errors.hpp"
#include "succinct_rank/estimate.hpp"

using srank::Estimate;

TEST_CASE("decimal rendering is exact") {
    CHECK(Estimate(11, 1).to_string() == "5.5");
    CHECK(Estimate(-1, 1).to_string() == "-0.5");
    CHECK(Estimate(125, 2).to_string() == "31.25");
    CHECK(Estimate(0, 7).to_string() == "0");
    CHECK(Estimate(64, 3).to_string() == "8");
    CHECK(Estimate(1, 20).to_string() == "0.00000095367431640625");
    CHECK(Estimate::from_integer(-42).to_string() == "-42");
    const __int128 big = static_cast<__int128>(1) << 100;
    CHECK(Estimate(big, 0).to_string() == "1267650600228229401496703205376");
}

TEST_CASE("comparison across fraction widths") {
    CHECK(Estimate(11, 1) == Estimate(22, 2));
    CHECK(Estimate(11, 1) < 6);
    CHECK(Estimate(11, 1) > 5);
    CHECK(Estimate(10, 1) == 5);
    CHECK(Estimate(-1, 1) < 0);
    CHECK(Estimate(-1, 1) > -1);
    CHECK(Estimate(3, 40) > 0);
}

TEST_CASE("difference aligns fractions") {
    const Estimate d = Estimate(31, 1) - Estimate(5, 3);  // 15.5 - 0.625
    CHECK(d.to_string() == "14.875");
    CHECK((Estimate(11, 1) - Estimate(11, 1)) == 0);
    CHECK(Estimate(96, 5).normalized().frac_bits() == 0);
    CHECK(Estimate(96, 5).to_double() == 3.0);
}

TEST_CASE("bounds on fraction bits") {
    CHECK_THROWS_AS(Estimate(1, 121), srank::ValidationError);
    const __int128 big = static_cast<__int128>(1) << 120;
    CHECK_THROWS_AS(Estimate(big, 0) <=> Estimate(1, 30), srank::CapacityError);
}
