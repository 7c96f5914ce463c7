#pragma once

#include "errhunt/arith.hpp"
#include "errhunt/dioph.hpp"
#include "errhunt/errterm.hpp"
#include "errhunt/resonance.hpp"
#include "errhunt/series.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// End-to-end search for abnormally large error-term values: resonate a
// member set against the oscillatory series, align the member phases with a
// simultaneous rational approximation x0, pick the best multiple l0*x0, and
// certify the windowed extremum of the full series against an explicit
// lower bound before scoring it on exact error terms.

namespace errhunt {

enum class BoundSide { two_sided, one_sided };

// Certified floor for the windowed extremum around a resonant point:
//   (1/8) sum_{m in members} f(m)
//   - 1/(L-1) * sum_{lambda_n <= 2 lambda_A} f(n)
//   - c/(pi^2 X lambda_A) * sum_n f(n),      c = 4 two-sided, 2 one-sided.
// anchor_index selects lambda_A inside the series; every member's frequency
// must lie in [lambda_A/2, 3 lambda_A/2] (invalid_set_error lists violators).
// Members are series n-values (1-based), not indices.
double resonance_lower_bound(const ResonanceSeries& s, const std::vector<std::uint32_t>& members,
                             std::size_t anchor_index, int L, double X, BoundSide side);

enum class HuntSide { two_sided, positive, negative };

struct HuntConfig {
    ErrKind kind = ErrKind::Divisor();
    double X = 1e3;             // window scale and dioph range start; >= 2
    int L = 2;                  // averaging length, in [2, 16]
    double N = 0.0;             // resonance scale; 0 -> recipe_N(kind, X, lambda, N_coef)
    double N_coef = 1.0;        // the recipe's free constant c
    double lambda_param = 0.0;  // 0 -> optimal_lambda(kind)
    std::uint32_t cutoff = 2000;  // series truncation; must be <= sieve limit
    std::uint32_t m_cap = 3;      // resonance cap (0 = unlimited)
    enum class Method { scan, lattice } method = Method::scan;
    double window_step = 0.0;  // 0 -> 1/(20 lambda_max); larger is rejected
    std::uint64_t dioph_budget = kDefaultScanBudget;
    std::uint64_t seed = 42;  // baselines only
};

struct HuntRecord {
    // resolved plan
    ErrKind kind = ErrKind::Divisor();
    double X = 0.0;
    int L = 0;
    double N = 0.0;            // anchored resonance scale actually used
    double N_requested = 0.0;  // recipe / config value before anchoring
    double lambda_param = 0.0;
    int r = 0;
    std::uint32_t anchor = 0;  // n* = round(N_requested); anchor_index = n* - 1
    std::vector<std::uint32_t> members;
    double theory_L = 0.0;  // asymptotic L recipe, reported as metadata only

    // phase alignment
    double x0 = 0.0;
    double x0_achieved = 0.0;
    bool x0_certified = false;
    bool x0_in_range = false;

    // averaging over multiples
    std::vector<double> F1_values;  // smoothed series at l*x0, l = 1..L
    int ell0 = 1;
    bool averaging_ok = false;  // triangle-weighted average >= (L/8) * member mass
    bool selection_ok = false;  // max_l >= member mass/8 - F_i(0)/(L-1)

    // window extremum
    HuntSide side = HuntSide::two_sided;
    double window_center = 0.0;
    double window_step = 0.0;
    double x_best = 0.0;
    double F_value = 0.0;  // signed series value at x_best
    double lower_bound = 0.0;
    bool bound_satisfied = false;
    bool certified_in_range = false;  // x0 certified within [X, (6L)^M X]

    // scoring at y = x_best^2 (divisor/circle) or x_best^k (piltz)
    std::optional<double> exact_err;  // omitted when y is past the sieve
    double approx_err = 0.0;          // series-implied error value at y
    double normalized_score = 0.0;    // |exact_err|/y^e, or the series-implied
                                      // |F_value|/(pi sqrt(2|1|k)) when exact_err is absent
};

// Resonance scale recipe c * log X * (loglog X)^{-E} * (logloglog X)^{-1/2},
// E the cardinality exponent of the kind's member set; needs X > e^e.
double recipe_N(ErrKind kind, double X, double lambda_param, double c);

// Asymptotic averaging length (loglog X)^10, or (loglog X)^(k^3+20) for
// piltz: far past desk scale, reported in records as metadata.
double recipe_L(ErrKind kind, double X);

// Runs the full pipeline.  Throws degenerate_parameters_error when the
// resonance set is empty or the anchor/members exceed the cutoff;
// std::invalid_argument on malformed config.  A distance-search budget
// overrun is not an error: the record comes back with certified_in_range =
// false and a best-effort x0.
HuntRecord hunt(const HuntConfig& cfg, const SieveTable& t);

struct TrialFailure {
    int trial = 0;
    std::string what;
};
struct ConstructionReport {
    int trials = 0;
    int passes = 0;
    std::vector<TrialFailure> failures;
};

// Randomized certification of the construction: per trial, draw a synthetic
// series (<= 30 terms, weights in [0,1], frequencies 2 sqrt(n)), a valid
// member set (<= 3), L in {2,3}, X in [2,8]; run the pipeline with an
// exhaustive scan and require the windowed extremum to clear the bound in
// the two-sided form, the one-sided form at beta = 0, and the sign-flipped
// one-sided form at beta = pi.  All three must hold for a trial to pass.
ConstructionReport verify_construction(int trials, std::uint64_t seed);

struct BaselineSummary {
    int samples = 0;
    double lo = 0.0, hi = 0.0;  // sampled x range: the hunt's final window
    double median = 0.0, p90 = 0.0, p99 = 0.0, max = 0.0;
};

// Control group: derives the same plan and window as hunt(cfg), then scores
// `samples` uniform x draws (seeded by cfg.seed) with the same normalized
// exact-error score.  Requires the sieve to cover the window's far end.
BaselineSummary baseline_random(const HuntConfig& cfg, const SieveTable& t, int samples);

} // namespace errhunt
