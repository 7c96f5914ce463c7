#pragma once

#include <cmath>

// Double-double ("dd") arithmetic: an unevaluated sum hi + lo with
// |lo| <= ulp(hi)/2, giving ~106 mantissa bits.  Used wherever a phase
// lambda * x must be reduced mod 1 without losing the fractional part:
// with lambda*x up to ~1e14 a plain double keeps only ~2 digits of the
// fraction, a dd keeps ~18.

namespace errhunt {

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd() = default;
    constexpr dd(double h) : hi(h) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}
};

inline double to_double(dd a) { return a.hi + a.lo; }

// s = fl(a+b) and the exact rounding error (Knuth).
inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

// Faster variant, requires |a| >= |b|.
inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

// p = fl(a*b) and the exact product error.
inline dd two_prod(double a, double b) {
#ifdef FP_FAST_FMA
    double p = a * b;
    return {p, std::fma(a, b, -p)};
#else
    // Dekker split; exact as long as no intermediate overflows (|a|,|b| < 2^995).
    constexpr double split = 134217729.0; // 2^27 + 1
    double p = a * b;
    double ta = split * a, tb = split * b;
    double ah = ta - (ta - a), bh = tb - (tb - b);
    double al = a - ah, bl = b - bh;
    double err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    return {p, err};
#endif
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }

inline dd operator+(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    dd t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd operator*(dd a, double b) {
    dd p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline dd operator+(dd a, double b) { return a + dd{b}; }
inline dd operator-(dd a, double b) { return a - dd{b}; }

inline bool operator<(dd a, dd b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator==(dd a, dd b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator<=(dd a, dd b) { return a < b || a == b; }

inline dd fabs(dd a) { return (a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0)) ? -a : a; }

// Centered fractional part: a - nearest_integer(a), in [-1/2, 1/2].
// Exactly odd (frac_centered(-a) == -frac_centered(a)), which callers use to
// make even functions of the phase bit-symmetric in the sign of x.
inline dd frac_centered(dd a) {
    double r = std::nearbyint(a.hi);
    dd s = two_sum(a.hi - r, a.lo); // a.hi - r is exact (same binade scale)
    if (s.hi > 0.5 || (s.hi == 0.5 && s.lo > 0.0)) s = s - dd{1.0};
    else if (s.hi < -0.5 || (s.hi == -0.5 && s.lo < 0.0)) s = s + dd{1.0};
    return s;
}

// sqrt of a double, accurate to full dd precision via one Newton step.
inline dd sqrt_dd(double x) {
    double r0 = std::sqrt(x);
    if (r0 == 0.0) return {0.0, 0.0};
    dd r{r0};
    dd err = r * r - dd{x}; // exact: r0^2 fits in a dd
    return r - err * (0.5 / r0);
}

inline dd pow_int(dd a, int k) {
    dd r{1.0};
    dd base = a;
    for (int e = k; e > 0; e >>= 1) {
        if (e & 1) r = r * base;
        base = base * base;
    }
    return r;
}

// k-th root of a double (k >= 2), one dd Newton step from the hardware seed.
inline dd nth_root_dd(double x, int k) {
    if (k == 2) return sqrt_dd(x);
    double r0 = std::pow(x, 1.0 / k);
    if (r0 == 0.0) return {0.0, 0.0};
    dd r{r0};
    dd err = pow_int(r, k) - dd{x};
    double deriv = double(k) * std::pow(r0, k - 1);
    return r - err * (1.0 / deriv);
}

} // namespace errhunt
