#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "errhunt/arith.hpp"
#include "errhunt/errterm.hpp"

#include <cmath>
#include <cstdint>

using namespace errhunt;

namespace {

std::uint64_t dk_brute(int k, std::uint64_t n) {
    if (k == 1) return 1;
    std::uint64_t c = 0;
    for (std::uint64_t a = 1; a <= n; ++a)
        if (n % a == 0) c += dk_brute(k - 1, n / a);
    return c;
}

} // namespace

TEST_CASE("divisor and circle error terms at hand-checked points") {
    SieveTable t = build_sieve(10000);
    // frozen 30-digit oracle values
    CHECK(error_term(ErrKind::Divisor(), t, 1.0) ==
          doctest::Approx(0.845568670196934278786975819835).epsilon(1e-14));
    CHECK(error_term(ErrKind::Divisor(), t, 2.0) ==
          doctest::Approx(1.30484297927397793873948739675).epsilon(1e-14));
    CHECK(error_term(ErrKind::Circle(), t, 1.0) ==
          doctest::Approx(0.85840734641020676153735661672).epsilon(1e-14));
    // stepping across n = 2 changes the count by d(2) = 2 minus the smooth part
    const double g2 = 2 * 0.5772156649015328606 - 1;
    const double smooth = 2.0 * (std::log(2.0) + g2) - 1.999 * (std::log(1.999) + g2);
    CHECK(error_term(ErrKind::Divisor(), t, 2.0) - error_term(ErrKind::Divisor(), t, 1.999) ==
          doctest::Approx(2.0 - smooth).epsilon(1e-9));
}

TEST_CASE("piltz error term against brute-force counting") {
    SieveTable t = build_sieve(200, {3, 4});
    std::uint64_t d3sum = 0, d4sum = 0;
    for (std::uint64_t n = 1; n <= 100; ++n) {
        d3sum += dk_brute(3, n);
        d4sum += dk_brute(4, n);
    }
    CHECK(error_term(ErrKind::Piltz(3), t, 100.0) ==
          doctest::Approx(double(d3sum) - main_term(3, 100.0)).epsilon(1e-12));
    CHECK(error_term(ErrKind::Piltz(4), t, 100.0) ==
          doctest::Approx(double(d4sum) - main_term(4, 100.0)).epsilon(1e-12));
    // k = 2 piltz must agree with the divisor path exactly
    CHECK(error_term(ErrKind::Piltz(2), t, 150.0) ==
          error_term(ErrKind::Divisor(), t, 150.0));
}

TEST_CASE("normalization exponents") {
    CHECK(normalization_exponent(ErrKind::Divisor()) == doctest::Approx(0.25));
    CHECK(normalization_exponent(ErrKind::Circle()) == doctest::Approx(0.25));
    CHECK(normalization_exponent(ErrKind::Piltz(3)) == doctest::Approx(1.0 / 3.0));
    CHECK(normalization_exponent(ErrKind::Piltz(4)) == doctest::Approx(3.0 / 8.0));
}

TEST_CASE("profile matches pointwise evaluation and validates input") {
    SieveTable t = build_sieve(5000);
    std::vector<double> xs = {10.0, 100.5, 4999.0};
    auto prof = error_profile(ErrKind::Circle(), t, xs);
    REQUIRE(prof.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(prof[i].x == xs[i]);
        CHECK(prof[i].err == error_term(ErrKind::Circle(), t, xs[i]));
        CHECK(prof[i].normalized == doctest::Approx(prof[i].err / std::pow(xs[i], 0.25)));
    }
    CHECK_THROWS_AS(error_term(ErrKind::Divisor(), t, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(error_term(ErrKind::Divisor(), t, 5001.0), std::out_of_range);
    CHECK_THROWS_AS(error_term(ErrKind::Piltz(3), t, 10.0), std::invalid_argument);
}
