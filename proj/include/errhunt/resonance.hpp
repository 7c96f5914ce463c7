#pragma once

#include "errhunt/errterm.hpp"

#include <cstdint>
#include <vector>

namespace errhunt {

struct ResonanceSet {
    double N = 0.0;
    double lambda_param = 0.0;
    int r = 0;                  // required distinct-prime count: floor(lambda * loglog N)
    double lo = 0.0, hi = 0.0;  // inclusive interval around N
    bool mod4_restricted = false;
    std::size_t full_count = 0;          // qualifiers before the cap
    std::vector<std::uint32_t> members;  // ascending, distinct
};

// Integers m in the kind's interval around N with omega(m) = r exactly
// (and, when mod4 is set, every prime factor of m = 1 mod 4).  Interval:
// [N/4, 9N/4] for divisor/circle, [2^-k N, (3/2)^k N] for piltz k.  When
// more than cap qualify (cap > 0), keeps the cap members with the largest
// weight - d(m), r(m) or d_k(m) by kind - breaking ties toward smaller m.
// An empty result is reported, not thrown; r < 1 is degenerate_parameters_error,
// an interval beyond the table is std::out_of_range.
ResonanceSet build_set(const SieveTable& t, ErrKind kind, double N, double lambda_param,
                       bool mod4, std::uint32_t cap = 0);

// First-order size of the uncapped member count:
//   (N / sqrt(loglog N)) * (log N)^(lambda-1-lambda*log(lambda) [- lambda*log 2]),
// the bracketed term under mod4.  Planning aid only; requires N >= 16.
double cardinality_estimate(double N, double lambda_param, bool mod4);

// Sum of the M largest values of d(n) n^{-3/4} over n <= limit.  The
// selection must already be stable: recomputing over limit/2 has to give
// the same sum, otherwise resource_limit_error asks for a larger limit.
double s_of_m(const SieveTable& t, std::uint32_t M, std::uint32_t limit);

// Resonator tuning: the lambda maximizing exponent_objective, in closed
// form (2^{4/3} divisor, 2^{1/3} circle, k^{2k/(k+1)} piltz).
double optimal_lambda(ErrKind kind);

// Exponent of the iterated-log power in the lower bound as a function of
// the tuning parameter t > 0; concave, maximized at optimal_lambda:
//   divisor: t log 2       + (3/4)(t - 1 - t log t)
//   circle:  (t log 2)/4   + (3/4)(t - 1 - t log t)
//   piltz k: t log k + ((k+1)/(2k))(t - 1 - t log t)
double exponent_objective(ErrKind kind, double t);

// Exponent reached by the previously best known constructions:
// (3 + 2 log 2)/4 for divisor, (log 2)/4 for circle; piltz has no
// comparable reference value (std::invalid_argument).
double prior_exponent(ErrKind kind);

} // namespace errhunt
