#pragma once

#include "errhunt/arith.hpp"

#include <vector>

// Exact lattice/divisor error terms:
//   divisor: sum_{n<=x} d(n)   - x(log x + 2*gamma - 1)
//   circle:  sum_{n<=x} r(n)   - pi*x
//   piltz k: sum_{n<=x} d_k(n) - x*Q_{k-1}(log x)
// The counting side is an O(1) prefix-sum lookup, so profiles over many x
// are cheap once the table is built.

namespace errhunt {

struct ErrKind {
    enum Tag { divisor, circle, piltz } tag = divisor;
    int k = 2; // piltz only

    static ErrKind Divisor() { return {divisor, 2}; }
    static ErrKind Circle() { return {circle, 2}; }
    static ErrKind Piltz(int k) { return {piltz, k}; }
};

// Conjectured growth exponent: |err| ~ x^e up to log powers.  Used to
// normalize scores; 1/4 for divisor and circle, (k-1)/(2k) for piltz.
double normalization_exponent(ErrKind kind);

// Requires 0 < x <= table limit (and the table to hold d_k for piltz k>=3).
double error_term(ErrKind kind, const SieveTable& t, double x);

struct ProfilePoint {
    double x = 0.0;
    double err = 0.0;
    double normalized = 0.0; // err / x^normalization_exponent
};

std::vector<ProfilePoint> error_profile(ErrKind kind, const SieveTable& t,
                                        const std::vector<double>& xs);

} // namespace errhunt
