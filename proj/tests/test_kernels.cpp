#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "errhunt/kernels.hpp"
#include "errhunt/rng.hpp"
#include "errhunt/series.hpp"

#include <cmath>

using namespace errhunt;

TEST_CASE("piecewise kernel values are exact") {
    CHECK(fejer_kernel(0.0) == 1.0);
    CHECK(fejer_kernel(1.0) == doctest::Approx(0.0).scale(1.0));
    CHECK(fejer_kernel(0.5) == doctest::Approx(4.0 / (std::numbers::pi * std::numbers::pi)));
    CHECK(triangle_kernel(0.0) == 1.0);
    CHECK(triangle_kernel(0.25) == 0.75);
    CHECK(triangle_kernel(-0.25) == 0.75);
    CHECK(triangle_kernel(1.0) == 0.0);
    CHECK(triangle_kernel(-3.7) == 0.0);
}

TEST_CASE("triangle-weighted average matches its closed form") {
    rng64 g(12345);
    for (int i = 0; i < 100000; ++i) {
        dd lambda = dd{uniform_real(g, 0.1, 50.0)};
        dd x0 = dd{uniform_real(g, 0.0, 1000.0)};
        int L = int(uniform_int(g, 1, 12));
        double direct = fejer_average(lambda, x0, L);
        double closed = fejer_average_closed(lambda, x0, L);
        CAPTURE(lambda.hi);
        CAPTURE(x0.hi);
        CAPTURE(L);
        CHECK(direct == doctest::Approx(closed).epsilon(1e-10).scale(double(L)));
        CHECK(direct >= -1e-12);
    }
}

TEST_CASE("average peaks at integer alignment and dominates near-alignment") {
    CHECK(fejer_average(dd{3.0}, dd{7.0}, 5) == doctest::Approx(5.0).epsilon(1e-13));
    // ||lambda x0|| <= 1/(6L) forces the average above (9/pi^2) L
    rng64 g(99);
    for (int i = 0; i < 2000; ++i) {
        int L = int(uniform_int(g, 2, 8));
        double base = std::floor(uniform_real(g, 1.0, 100.0));
        double off = uniform_real(g, -1.0, 1.0) / (6.0 * L);
        dd lambda = dd{1.0};
        dd x0 = dd{base + off};
        double avg = fejer_average(lambda, x0, L);
        CAPTURE(L);
        CAPTURE(base);
        CAPTURE(off);
        CHECK(avg >= (9.0 / (std::numbers::pi * std::numbers::pi)) * L - 1e-9);
        CHECK(avg >= L / 8.0);
    }
}

TEST_CASE("band-pass smoothing: window, weights, and evenness") {
    // three frequencies around anchor 4.0: 2.0 (weight 1/2), 4.0 (weight 1),
    // 7.9 (weight ~0.025), 8.0 excluded, 9.0 excluded
    ResonanceSeries s =
        make_series({1.0, 1.0, 1.0, 1.0, 1.0}, {dd{2.0}, dd{4.0}, dd{7.9}, dd{8.0}, dd{9.0}},
                    -0.25 * std::numbers::pi); // beta must not enter
    std::size_t anchor = 1;
    double at0 = bandpass_smooth(s, anchor, dd{0.0});
    // (1/2)(tri(1/2) + tri(0) + tri(-0.975) + tri(-1) + tri(-1.25))
    CHECK(at0 == doctest::Approx(0.5 * (0.5 + 1.0 + 0.025)).epsilon(1e-12));

    double lp0 = lowpass_smooth(s, anchor, dd{0.0});
    // tri(2/8) + tri(4/8) + tri(7.9/8) + tri(1) + tri(9/8)
    CHECK(lp0 == doctest::Approx(0.75 + 0.5 + 0.0125).epsilon(1e-12));

    for (double x : {0.37, 12.125, 900.5}) {
        CHECK(bandpass_smooth(s, anchor, dd{x}) == bandpass_smooth(s, anchor, dd{-x}));
        CHECK(lowpass_smooth(s, anchor, dd{x}) == lowpass_smooth(s, anchor, dd{-x}));
        // manual recomputation with explicit cosines
        double want = 0.0;
        for (std::size_t i = 0; i < s.f.size(); ++i) {
            double w = triangle_kernel((4.0 - s.lambda[i].hi) / 4.0);
            want += 0.5 * s.f[i] * w * std::cos(2 * std::numbers::pi * s.lambda[i].hi * x);
        }
        CHECK(bandpass_smooth(s, anchor, dd{x}) == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("smoothed value at an aligned point is large") {
    // both smoothings keep at least 1/2 resp. 1/4 of each member's weight at
    // integer alignment; at x0 = 0 all cosines are 1
    ResonanceSeries s = make_series({0.7, 1.3, 0.4}, {dd{3.0}, dd{4.0}, dd{5.0}}, 0.0);
    double bp = bandpass_smooth(s, 1, dd{0.0});
    double lp = lowpass_smooth(s, 1, dd{0.0});
    double mass = 0.7 + 1.3 + 0.4;
    CHECK(bp >= mass / 4.0); // each in-window weight >= 1/2, halved by the 1/2 prefactor
    CHECK(lp >= mass / 4.0);
}

TEST_CASE("argument validation") {
    ResonanceSeries s = make_series({1.0}, {dd{1.0}}, 0.0);
    CHECK_THROWS_AS(bandpass_smooth(s, 5, dd{0.0}), std::invalid_argument);
    CHECK_THROWS_AS(lowpass_smooth(s, 5, dd{0.0}), std::invalid_argument);
    CHECK_THROWS_AS(fejer_average(dd{1.0}, dd{0.0}, 0), std::invalid_argument);
}
