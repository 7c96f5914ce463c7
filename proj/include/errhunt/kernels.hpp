#pragma once

#include "errhunt/dd.hpp"
#include "errhunt/series.hpp"

#include <cstddef>

// Kernel-smoothed versions of a series F(x) = sum f(n) cos(2 pi lambda_n x).
// Smoothing trades F's beta phase for positivity structure: both sums below
// use the plain cosine (no phase offset) and a triangle weight, so their
// values at well-approximated points are provably large.

namespace errhunt {

// (sin(pi u) / (pi u))^2; the nonnegative kernel behind the averages below.
double fejer_kernel(double u);

// max(0, 1 - |y|).
double triangle_kernel(double y);

// Band-limited smoothing around the anchor frequency L_A = lambda[anchor]:
//   (1/2) sum_n f(n) cos(2 pi lambda_n x) * triangle((L_A - lambda_n) / L_A).
// Only frequencies in (0, 2 L_A) contribute.  Exactly even in x.
double bandpass_smooth(const ResonanceSeries& s, std::size_t anchor, dd x);

// Low-pass smoothing:
//   sum_n f(n) cos(2 pi lambda_n x) * triangle(lambda_n / (2 L_A)).
// Exactly even in x.
double lowpass_smooth(const ResonanceSeries& s, std::size_t anchor, dd x);

// Triangle-weighted cosine average over integer multiples:
//   sum_{l=-L}^{L} triangle(l/L) cos(2 pi lambda l x0)
//     = (1/L) (sin(pi L t) / sin(pi t))^2   with t = lambda x0 mod 1,
// hence always >= 0, and = L when lambda x0 is an integer.  Requires L >= 1.
// Implemented as the direct sum (no sin(pi t) ~ 0 instability); the closed
// form below is the identity oracle.
double fejer_average(dd lambda, dd x0, int L);

// Closed-form right-hand side of the identity above.
double fejer_average_closed(dd lambda, dd x0, int L);

} // namespace errhunt
