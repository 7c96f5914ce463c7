#include "errhunt/kernels.hpp"

#include "errhunt/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace errhunt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// cos(2 pi lambda x) through the centered fraction |t| of lambda*x.
// frac_centered is exactly odd, so the value is bit-identical under x -> -x;
// the evenness tests rely on that.
double cos_phase(dd lambda, dd x) {
    const dd p = lambda * x;
    if (std::fabs(p.hi) > 1e14)
        throw precision_loss_error("cos_phase: |lambda*x| beyond 1e14 leaves too few phase bits");
    const dd t = fabs(frac_centered(p));
    return std::cos(kTwoPi * t.hi + kTwoPi * t.lo);
}

double anchor_freq(const ResonanceSeries& s, std::size_t anchor, const char* who) {
    if (anchor >= s.lambda.size())
        throw std::invalid_argument(std::string(who) + ": anchor index out of range");
    const double la = to_double(s.lambda[anchor]);
    if (!(la > 0.0))
        throw std::invalid_argument(std::string(who) + ": anchor frequency must be > 0");
    return la;
}

} // namespace

double fejer_kernel(double u) {
    if (u == 0.0) return 1.0;
    const double t = std::numbers::pi * u;
    const double q = std::sin(t) / t;
    return q * q;
}

double triangle_kernel(double y) { return std::max(0.0, 1.0 - std::fabs(y)); }

double bandpass_smooth(const ResonanceSeries& s, std::size_t anchor, dd x) {
    const double la = anchor_freq(s, anchor, "bandpass_smooth");
    double acc = 0.0;
    for (std::size_t i = 0; i < s.f.size(); ++i) {
        if (s.f[i] == 0.0) continue;
        const double w = triangle_kernel((la - to_double(s.lambda[i])) / la);
        if (w == 0.0) continue;
        acc += s.f[i] * w * cos_phase(s.lambda[i], x);
    }
    return 0.5 * acc;
}

double lowpass_smooth(const ResonanceSeries& s, std::size_t anchor, dd x) {
    const double la = anchor_freq(s, anchor, "lowpass_smooth");
    double acc = 0.0;
    for (std::size_t i = 0; i < s.f.size(); ++i) {
        if (s.f[i] == 0.0) continue;
        const double w = triangle_kernel(to_double(s.lambda[i]) / (2.0 * la));
        if (w == 0.0) continue;
        acc += s.f[i] * w * cos_phase(s.lambda[i], x);
    }
    return acc;
}

double fejer_average(dd lambda, dd x0, int L) {
    if (L < 1) throw std::invalid_argument("fejer_average: L must be >= 1");
    double acc = 1.0; // l = 0 term
    for (int l = 1; l < L; ++l) {
        const double w = triangle_kernel(double(l) / double(L));
        acc += 2.0 * w * cos_phase(lambda, x0 * double(l));
    }
    return acc;
}

double fejer_average_closed(dd lambda, dd x0, int L) {
    if (L < 1) throw std::invalid_argument("fejer_average_closed: L must be >= 1");
    const dd tc = frac_centered(lambda * x0);
    const double t = to_double(fabs(tc));
    if (t == 0.0) return double(L);
    const double denom = std::sin(std::numbers::pi * t);
    const double num = std::sin(std::numbers::pi * double(L) * t);
    const double q = num / denom;
    return q * q / double(L);
}

} // namespace errhunt
