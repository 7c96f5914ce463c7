#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "errhunt/arith.hpp"
#include "errhunt/errors.hpp"
#include "errhunt/hunter.hpp"
#include "errhunt/kernels.hpp"
#include "errhunt/series.hpp"

#include <omp.h>

#include <cmath>
#include <numbers>

using namespace errhunt;

namespace {

bool same_record(const HuntRecord& a, const HuntRecord& b) {
    return a.N == b.N && a.x0 == b.x0 && a.x0_achieved == b.x0_achieved &&
           a.members == b.members && a.F1_values == b.F1_values && a.ell0 == b.ell0 &&
           a.x_best == b.x_best && a.F_value == b.F_value && a.lower_bound == b.lower_bound &&
           a.normalized_score == b.normalized_score;
}

} // namespace

TEST_CASE("certified lower bound: frozen single-frequency values") {
    ResonanceSeries s = make_series({1.0}, {sqrt_dd(1.0) * 2.0}, 0.0);
    // 1/8 - 1/(L-1) - c/(pi^2 X lam): X=2, lam=2, L=2
    CHECK(resonance_lower_bound(s, {1u}, 0, 2, 2.0, BoundSide::two_sided) ==
          doctest::Approx(0.125 - 1.0 - 1.0 / (std::numbers::pi * std::numbers::pi))
              .epsilon(1e-14));
    CHECK(resonance_lower_bound(s, {1u}, 0, 2, 2.0, BoundSide::one_sided) ==
          doctest::Approx(0.125 - 1.0 - 0.5 / (std::numbers::pi * std::numbers::pi))
              .epsilon(1e-14));
}

TEST_CASE("certified lower bound: direct-sum recomputation") {
    SieveTable t = build_sieve(200);
    ResonanceSeries s = divisor_series(t, 150);
    std::vector<std::uint32_t> members = {12, 18, 20};
    std::size_t anchor = 14; // n = 15, lambda_A = 2 sqrt 15
    int L = 4;
    double X = 100.0;

    double lamA = 2.0 * std::sqrt(15.0);
    double mass = 0.0;
    for (auto m : members) mass += t.d[m] * std::pow(double(m), -0.75);
    double low = 0.0;
    for (int n = 1; n <= 150; ++n)
        if (2.0 * std::sqrt(double(n)) <= 2.0 * lamA) low += t.d[n] * std::pow(double(n), -0.75);
    double all = 0.0;
    for (int n = 1; n <= 150; ++n) all += t.d[n] * std::pow(double(n), -0.75);

    double want2 = mass / 8.0 - low / (L - 1) -
                   4.0 * all / (std::numbers::pi * std::numbers::pi * X * lamA);
    double want1 = mass / 8.0 - low / (L - 1) -
                   2.0 * all / (std::numbers::pi * std::numbers::pi * X * lamA);
    CHECK(resonance_lower_bound(s, members, anchor, L, X, BoundSide::two_sided) ==
          doctest::Approx(want2).epsilon(1e-12));
    CHECK(resonance_lower_bound(s, members, anchor, L, X, BoundSide::one_sided) ==
          doctest::Approx(want1).epsilon(1e-12));
}

TEST_CASE("certified lower bound: hypothesis violations are reported with offenders") {
    SieveTable t = build_sieve(200);
    ResonanceSeries s = divisor_series(t, 150);
    // member 80: lambda = 2 sqrt 80 = 17.89 > 1.5 * lambda_A = 11.6
    try {
        resonance_lower_bound(s, {12, 80}, 14, 4, 100.0, BoundSide::two_sided);
        FAIL("expected invalid_set_error");
    } catch (const invalid_set_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("80") != std::string::npos);
        CHECK(msg.find("12") == std::string::npos);
    }
    CHECK_THROWS_AS(resonance_lower_bound(s, {12}, 200, 4, 100.0, BoundSide::two_sided),
                    std::invalid_argument);
    CHECK_THROWS_AS(resonance_lower_bound(s, {}, 14, 4, 100.0, BoundSide::two_sided),
                    invalid_set_error);
    CHECK_THROWS_AS(resonance_lower_bound(s, {12}, 14, 1, 100.0, BoundSide::two_sided),
                    std::invalid_argument);
}

TEST_CASE("randomized construction check passes wall to wall") {
    ConstructionReport rep = verify_construction(25, 7);
    CHECK(rep.trials == 25);
    CHECK(rep.passes == 25);
    CHECK(rep.failures.empty());
    CHECK_THROWS_AS(verify_construction(0, 1), std::invalid_argument);
}

TEST_CASE("scale recipes") {
    double lam = std::pow(2.0, 4.0 / 3.0);
    // recompute the iterated-log formula directly
    double X = 1000.0;
    double l1 = std::log(X), l2 = std::log(l1), l3 = std::log(l2);
    double E = lam - 1.0 - lam * std::log(lam);
    CHECK(recipe_N(ErrKind::Divisor(), X, lam, 1.0) ==
          doctest::Approx(l1 * std::pow(l2, -E) / std::sqrt(l3)).epsilon(1e-13));
    // circle subtracts the mod-4 density from the exponent
    double Ec = E - lam * std::log(2.0);
    CHECK(recipe_N(ErrKind::Circle(), X, lam, 2.0) ==
          doctest::Approx(2.0 * l1 * std::pow(l2, -Ec) / std::sqrt(l3)).epsilon(1e-13));
    CHECK_THROWS_AS(recipe_N(ErrKind::Divisor(), 10.0, lam, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(recipe_N(ErrKind::Divisor(), X, lam, 0.0), std::invalid_argument);

    CHECK(recipe_L(ErrKind::Divisor(), X) == doctest::Approx(std::pow(l2, 10.0)));
    CHECK(recipe_L(ErrKind::Piltz(3), X) == doctest::Approx(std::pow(l2, 27.0 + 20.0)));
    CHECK(recipe_L(ErrKind::Divisor(), 2.0) == 0.0);
}

TEST_CASE("divisor hunt: full pipeline invariants at X = 100") {
    SieveTable t = build_sieve(200000);
    HuntConfig cfg;
    cfg.kind = ErrKind::Divisor();
    cfg.X = 100.0;
    cfg.L = 2;
    cfg.cutoff = 500;
    cfg.m_cap = 3;
    HuntRecord r = hunt(cfg, t);

    // plan: recipe gives N just under 10, anchored to 10
    CHECK(r.N == 10.0);
    CHECK(r.anchor == 10);
    CHECK(r.r == 2);
    CHECK(r.members == std::vector<std::uint32_t>{12, 18, 20});
    CHECK(r.side == HuntSide::two_sided);

    // alignment: certified in the Dirichlet range, quality 1/(6L)
    CHECK(r.x0_certified);
    CHECK(r.x0_in_range);
    CHECK(r.x0 >= cfg.X);
    CHECK(r.x0_achieved <= 1.0 / (6.0 * cfg.L) * (1 + 1e-9));

    // averaging and selection invariants hold at a certified point
    REQUIRE(r.F1_values.size() == 2);
    CHECK(r.averaging_ok);
    CHECK(r.selection_ok);
    CHECK((r.ell0 == 1 || r.ell0 == 2));
    CHECK(r.window_center == doctest::Approx(r.x0 * r.ell0));

    // the window extremum really is the series value at x_best
    ResonanceSeries s = divisor_series(t, cfg.cutoff);
    CHECK(r.F_value == doctest::Approx(eval_series(s, dd{r.x_best})).epsilon(1e-12));
    CHECK(r.x_best >= r.window_center - cfg.X / 2 - r.window_step);
    CHECK(r.x_best <= r.window_center + cfg.X / 2 + r.window_step);
    CHECK(r.certified_in_range);
    CHECK(r.bound_satisfied); // two-sided: |F| at the extremum beats the bound

    // scoring: exact error at y = x_best^2 vs the series-implied value
    REQUIRE(r.exact_err.has_value());
    double y = r.x_best * r.x_best;
    CHECK(*r.exact_err == doctest::Approx(error_term(ErrKind::Divisor(), t, y)).epsilon(1e-12));
    CHECK(r.approx_err ==
          doctest::Approx(0.25 +
                          std::sqrt(r.x_best) / (std::numbers::pi * std::sqrt(2.0)) * r.F_value)
              .epsilon(1e-12));
    CHECK(r.normalized_score ==
          doctest::Approx(std::fabs(*r.exact_err) / std::pow(y, 0.25)).epsilon(1e-12));
    // truncation error scales like y^(1/4); measured gap 9.8 at y ~ 5e4, cutoff 500
    CHECK(std::fabs(*r.exact_err - r.approx_err) < 2.0 * std::pow(y, 0.25));
}

TEST_CASE("hunt honors explicit N and the piltz sign convention") {
    SieveTable t = build_sieve(1000, {3, 7});

    HuntConfig c3;
    c3.kind = ErrKind::Piltz(3);
    c3.X = 50.0;
    c3.L = 2;
    c3.N = 40.0;
    c3.lambda_param = 1.0;
    c3.cutoff = 700;
    c3.m_cap = 3;
    HuntRecord r3 = hunt(c3, t);
    CHECK(r3.side == HuntSide::positive); // k = 3 mod 8
    CHECK(r3.members == std::vector<std::uint32_t>{32, 64, 128});
    ResonanceSeries s3 = piltz_series(t, 3, r3.N, c3.cutoff);
    // extremum maximizes +F: neighbors cannot beat it
    double here = eval_series(s3, dd{r3.x_best});
    CHECK(r3.F_value == doctest::Approx(here).epsilon(1e-12));
    CHECK(here >= eval_series(s3, dd{r3.x_best - r3.window_step}) - 1e-12);
    CHECK(here >= eval_series(s3, dd{r3.x_best + r3.window_step}) - 1e-12);
    CHECK(r3.F_value > 0.0);

    HuntConfig c7 = c3;
    c7.kind = ErrKind::Piltz(7);
    HuntRecord r7 = hunt(c7, t);
    CHECK(r7.side == HuntSide::negative); // k = 7 mod 8
    CHECK(r7.members == std::vector<std::uint32_t>{128, 256, 512});
    ResonanceSeries s7 = piltz_series(t, 7, r7.N, c7.cutoff);
    double v7 = eval_series(s7, dd{r7.x_best});
    CHECK(r7.F_value == doctest::Approx(v7).epsilon(1e-12));
    // minimizes F (maximizes -F)
    CHECK(v7 <= eval_series(s7, dd{r7.x_best - r7.window_step}) + 1e-12);
    CHECK(v7 <= eval_series(s7, dd{r7.x_best + r7.window_step}) + 1e-12);
    CHECK(r7.F_value < 0.0);
}

TEST_CASE("desk-scale piltz defaults degenerate honestly") {
    SieveTable t = build_sieve(5000, {3});
    HuntConfig cfg;
    cfg.kind = ErrKind::Piltz(3);
    cfg.X = 50.0;
    cfg.cutoff = 1000;
    // optimal lambda = 5.196 prescribes omega(m) = 6: no such m near N
    CHECK_THROWS_AS(hunt(cfg, t), degenerate_parameters_error);
}

TEST_CASE("hunt config validation") {
    SieveTable t = build_sieve(5000);
    HuntConfig cfg;
    cfg.X = 1.0;
    CHECK_THROWS_AS(hunt(cfg, t), std::invalid_argument);
    cfg.X = 100.0;
    cfg.L = 1;
    CHECK_THROWS_AS(hunt(cfg, t), std::invalid_argument);
    cfg.L = 2;
    cfg.cutoff = 10000;
    CHECK_THROWS_AS(hunt(cfg, t), std::invalid_argument);
    cfg.cutoff = 500;
    cfg.window_step = 1.0; // far above 1/(20 lambda_max)
    CHECK_THROWS_AS(hunt(cfg, t), std::invalid_argument);
}

TEST_CASE("records are identical across thread counts") {
    SieveTable t = build_sieve(200000);
    HuntConfig cfg;
    cfg.kind = ErrKind::Divisor();
    cfg.X = 100.0;
    cfg.L = 3;
    cfg.cutoff = 400;
    int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    HuntRecord a = hunt(cfg, t);
    omp_set_num_threads(4);
    HuntRecord b = hunt(cfg, t);
    omp_set_num_threads(saved);
    CHECK(same_record(a, b));
}

TEST_CASE("random baseline: determinism, quantile order, range checks") {
    SieveTable t = build_sieve(200000);
    HuntConfig cfg;
    cfg.kind = ErrKind::Divisor();
    cfg.X = 100.0;
    cfg.L = 2;
    cfg.cutoff = 500;
    cfg.seed = 11;
    BaselineSummary s1 = baseline_random(cfg, t, 400);
    BaselineSummary s2 = baseline_random(cfg, t, 400);
    CHECK(s1.median == s2.median);
    CHECK(s1.p90 == s2.p90);
    CHECK(s1.max == s2.max);
    CHECK(s1.samples == 400);
    CHECK(s1.lo < s1.hi);
    CHECK(s1.median <= s1.p90);
    CHECK(s1.p90 <= s1.p99);
    CHECK(s1.p99 <= s1.max);

    cfg.seed = 12;
    BaselineSummary s3 = baseline_random(cfg, t, 400);
    CHECK(s3.median != s1.median);

    SieveTable tiny = build_sieve(3000);
    CHECK_THROWS_AS(baseline_random(cfg, tiny, 10), std::out_of_range);
}
