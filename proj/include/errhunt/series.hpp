#pragma once

#include "errhunt/arith.hpp"
#include "errhunt/dd.hpp"

#include <cstdint>
#include <functional>
#include <vector>

// Truncated oscillatory sums F(x) = sum_n f(n) cos(2 pi lambda_n x + beta)
// with nonnegative weights and nondecreasing frequencies.  The specific
// instances tie F to the exact error terms:
//   divisor:  f(n) = d(n) n^{-3/4},   lambda_n = 2 sqrt n,    beta = -pi/4,
//             Delta(x^2) ~ (sqrt x / (pi sqrt 2)) F(x)
//   circle:   f(n) = r(n) n^{-3/4},   lambda_n = sqrt n,      beta = +pi/4,
//             P(x^2) ~ -(sqrt x / pi) F(x)
//   piltz k:  f(n) = d_k(n) n^{-(k+1)/(2k)} exp(-pi^2 (n/N)^{2/k}),
//             lambda_n = k n^{1/k},  beta = (k-3) pi/4,
//             entering the Gaussian-smoothed average identity below.
// Phases are reduced mod 1 in double-double before the cosine; with plain
// doubles the fractional part of lambda*x is meaningless already at x ~ 1e8.

namespace errhunt {

struct ResonanceSeries {
    std::vector<double> f;  // weights, >= 0; zeros are kept and skipped in eval
    std::vector<dd> lambda; // nondecreasing, >= 0
    double beta = 0.0;
    double weight_sum = 0.0; // sum of f, cached at construction
};

enum class PhaseMode {
    extended, // dd phase reduction (default)
    plain     // double phase; for benchmarks and error demos only
};

// Validates and caches the weight sum; throws std::invalid_argument on
// size mismatch, negative/non-finite weights, or decreasing frequencies.
ResonanceSeries make_series(std::vector<double> f, std::vector<dd> lambda, double beta);

// F(x).  Deterministic for any thread count: fixed 4096-element blocks are
// summed in index order and combined pairwise.  Requires
// |lambda_max * x| <= 1e14 in extended mode (precision_loss_error beyond).
double eval_series(const ResonanceSeries& s, dd x, PhaseMode mode = PhaseMode::extended);
double eval_series_serial(const ResonanceSeries& s, dd x, PhaseMode mode = PhaseMode::extended);

// Instance builders; cutoff must be >= 1 and <= table limit.
ResonanceSeries divisor_series(const SieveTable& t, std::uint32_t cutoff);
ResonanceSeries circle_series(const SieveTable& t, std::uint32_t cutoff);

struct TailReport {
    double bound = 0.0;     // crude bound on the dropped weight beyond cutoff
    bool sufficient = true; // bound negligible next to the kept weight
};

// k in [2,10]; k >= 3 requires d_k in the table.  N >= 1 sets the Gaussian
// damping width.
ResonanceSeries piltz_series(const SieveTable& t, int k, double N, std::uint32_t cutoff,
                             TailReport* tail = nullptr);

// Error-term approximations at y (argument of Delta/P), using x = sqrt(y).
// Includes the constant term of the exact summation formula (+1/4 for the
// divisor case, -1 for the circle case); without it the truncated series
// stalls at that fixed offset instead of converging.
double approx_divisor_err(const ResonanceSeries& s, double y);
double approx_circle_err(const ResonanceSeries& s, double y);
double approx_divisor_err(const SieveTable& t, std::uint32_t cutoff, double y);
double approx_circle_err(const SieveTable& t, std::uint32_t cutoff, double y);

// --- Gaussian-smoothed averages ------------------------------------------
// A[g] = (N^{1/k} / sqrt(pi)) * Int g(u) exp(-u^2 N^{2/k}) du.  The identity
// checked by `series prop4` equates A[u -> Delta_k(x^k e^{u/x})] with
//   (x^{(k-1)/2} / (pi sqrt k)) * F_piltz(x)
// up to rapidly decaying corrections.

struct QuadratureConfig {
    double support_sigmas = 8.0;   // integrate over |u| <= support_sigmas / N^{1/k}
    double max_piece_sigmas = 0.5; // split smooth pieces to this width (in sigma units)
};

// Generic quadrature hook: integrand g, damping scale N^{1/k} derived from
// (k, N), and the sorted interior points where g jumps.  Between jumps g is
// assumed smooth; each piece gets 16-point Gauss-Legendre panels.
double gaussian_average(const std::function<double(double)>& g, int k, double N,
                        const std::vector<double>& interior_jumps,
                        const QuadratureConfig& cfg = {});

// A[u -> Delta_k(x^k e^{u/x})], splitting exactly at the jumps of the
// summatory function.  Throws std::out_of_range (naming the needed limit)
// when x^k e^{W/x} exceeds the table.
double smoothed_error_average(int k, const SieveTable& t, double x, double N,
                              const QuadratureConfig& cfg = {});

// The series side of the identity at the same (k, x, N).
double smoothed_series_sum(int k, const SieveTable& t, double x, double N,
                           std::uint32_t cutoff, TailReport* tail = nullptr);

} // namespace errhunt
