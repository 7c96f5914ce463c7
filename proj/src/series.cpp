#include "errhunt/series.hpp"
#include "errhunt/errors.hpp"
#include "errhunt/errterm.hpp"
#include "errhunt/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace errhunt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPhaseCap = 1e14; // |lambda * x| beyond this loses the fraction

double eval_impl(const ResonanceSeries& s, dd x, PhaseMode mode, bool parallel) {
    const std::size_t n = s.f.size();
    if (n == 0) return 0.0;
    if (mode == PhaseMode::extended && !s.lambda.empty()) {
        const double prod = std::fabs(s.lambda.back().hi * to_double(x));
        if (prod > kPhaseCap)
            throw precision_loss_error("eval_series: |lambda*x| ~ " + std::to_string(prod) +
                                       " exceeds 1e14; fractional phase would be lost");
    }
    const std::size_t nb = (n + kEvalBlock - 1) / kEvalBlock;
    std::vector<double> part(nb, 0.0);
    const double beta = s.beta;
    const double xd = to_double(x);

    auto run_block = [&](std::size_t b) {
        const std::size_t i0 = b * kEvalBlock;
        const std::size_t i1 = std::min(n, i0 + kEvalBlock);
        double acc = 0.0;
        if (mode == PhaseMode::extended) {
            for (std::size_t i = i0; i < i1; ++i) {
                if (s.f[i] == 0.0) continue;
                const dd ph = frac_centered(s.lambda[i] * x);
                acc += s.f[i] * std::cos(kTwoPi * ph.hi + (kTwoPi * ph.lo + beta));
            }
        } else {
            for (std::size_t i = i0; i < i1; ++i) {
                if (s.f[i] == 0.0) continue;
                acc += s.f[i] * std::cos(kTwoPi * s.lambda[i].hi * xd + beta);
            }
        }
        part[b] = acc;
    };

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t b = 0; b < std::int64_t(nb); ++b) run_block(std::size_t(b));
    } else {
        for (std::size_t b = 0; b < nb; ++b) run_block(b);
    }
    return pairwise_sum(part);
}

const std::vector<std::uint32_t>& dk_array(const SieveTable& t, int k, const char* who) {
    if (k == 2) return t.d;
    auto it = t.dk.find(k);
    if (it == t.dk.end())
        throw std::invalid_argument(std::string(who) + ": table has no d_" + std::to_string(k));
    return it->second;
}

void check_cutoff(const SieveTable& t, std::uint32_t cutoff, const char* who) {
    if (cutoff == 0) throw std::invalid_argument(std::string(who) + ": cutoff must be >= 1");
    if (cutoff > t.limit)
        throw std::out_of_range(std::string(who) + ": cutoff " + std::to_string(cutoff) +
                                " exceeds table limit " + std::to_string(t.limit));
}

} // namespace

ResonanceSeries make_series(std::vector<double> f, std::vector<dd> lambda, double beta) {
    if (f.size() != lambda.size())
        throw std::invalid_argument("make_series: weight/frequency size mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!(f[i] >= 0.0) || !std::isfinite(f[i]))
            throw std::invalid_argument("make_series: weights must be finite and >= 0");
        if (lambda[i].hi < 0.0)
            throw std::invalid_argument("make_series: frequencies must be >= 0");
        if (i > 0 && lambda[i] < lambda[i - 1])
            throw std::invalid_argument("make_series: frequencies must be nondecreasing");
        sum += f[i];
    }
    ResonanceSeries s;
    s.f = std::move(f);
    s.lambda = std::move(lambda);
    s.beta = beta;
    s.weight_sum = sum;
    return s;
}

double eval_series(const ResonanceSeries& s, dd x, PhaseMode mode) {
    return eval_impl(s, x, mode, true);
}

double eval_series_serial(const ResonanceSeries& s, dd x, PhaseMode mode) {
    return eval_impl(s, x, mode, false);
}

ResonanceSeries divisor_series(const SieveTable& t, std::uint32_t cutoff) {
    check_cutoff(t, cutoff, "divisor_series");
    std::vector<double> f(cutoff);
    std::vector<dd> lam(cutoff);
    for (std::uint32_t n = 1; n <= cutoff; ++n) {
        f[n - 1] = double(t.d[n]) * std::pow(double(n), -0.75);
        lam[n - 1] = sqrt_dd(double(n)) * 2.0;
    }
    return make_series(std::move(f), std::move(lam), -std::numbers::pi / 4.0);
}

ResonanceSeries circle_series(const SieveTable& t, std::uint32_t cutoff) {
    check_cutoff(t, cutoff, "circle_series");
    std::vector<double> f(cutoff);
    std::vector<dd> lam(cutoff);
    for (std::uint32_t n = 1; n <= cutoff; ++n) {
        f[n - 1] = double(t.r[n]) * std::pow(double(n), -0.75);
        lam[n - 1] = sqrt_dd(double(n));
    }
    return make_series(std::move(f), std::move(lam), std::numbers::pi / 4.0);
}

ResonanceSeries piltz_series(const SieveTable& t, int k, double N, std::uint32_t cutoff,
                             TailReport* tail) {
    if (k < 2 || k > 10)
        throw std::invalid_argument("piltz_series: k must be in [2,10]");
    if (!(N >= 1.0)) throw std::invalid_argument("piltz_series: N must be >= 1");
    check_cutoff(t, cutoff, "piltz_series");
    const auto& a = dk_array(t, k, "piltz_series");
    const double expo = -double(k + 1) / double(2 * k);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double inv_k = 2.0 / double(k);
    std::vector<double> f(cutoff);
    std::vector<dd> lam(cutoff);
    double kept = 0.0;
    for (std::uint32_t n = 1; n <= cutoff; ++n) {
        const double damp = std::exp(-pi2 * std::pow(double(n) / N, inv_k));
        f[n - 1] = double(a[n]) * std::pow(double(n), expo) * damp;
        kept += double(a[n]) * std::pow(double(n), expo);
        lam[n - 1] = nth_root_dd(double(n), k) * double(k);
    }
    if (tail) {
        // crude proxy: the next term's damping times the undamped kept weight
        const double next_damp = std::exp(-pi2 * std::pow(double(cutoff + 1) / N, inv_k));
        tail->bound = next_damp * kept;
        tail->sufficient = tail->bound <= 1e-12 * (1.0 + kept);
    }
    const double beta = double(k - 3) * std::numbers::pi / 4.0;
    return make_series(std::move(f), std::move(lam), beta);
}

double approx_divisor_err(const ResonanceSeries& s, double y) {
    if (!(y > 0.0)) throw std::invalid_argument("approx_divisor_err: y must be > 0");
    const double pre = std::pow(y, 0.25) / (std::numbers::pi * std::sqrt(2.0));
    return 0.25 + pre * eval_series(s, sqrt_dd(y));
}

double approx_circle_err(const ResonanceSeries& s, double y) {
    if (!(y > 0.0)) throw std::invalid_argument("approx_circle_err: y must be > 0");
    const double pre = -std::pow(y, 0.25) / std::numbers::pi;
    return -1.0 + pre * eval_series(s, sqrt_dd(y));
}

double approx_divisor_err(const SieveTable& t, std::uint32_t cutoff, double y) {
    return approx_divisor_err(divisor_series(t, cutoff), y);
}

double approx_circle_err(const SieveTable& t, std::uint32_t cutoff, double y) {
    return approx_circle_err(circle_series(t, cutoff), y);
}

// --- Gaussian-smoothed averages --------------------------------------------

namespace {

// 16-point Gauss-Legendre on [-1,1] (positive half; nodes are symmetric).
constexpr int kGLHalf = 8;
constexpr double kGLNode[kGLHalf] = {
    0.09501250983763744018531934, 0.28160355077925891323046050,
    0.45801677765722738634241944, 0.61787624440264374844667176,
    0.75540440835500303389510119, 0.86563120238783174388046790,
    0.94457502307323257607798842, 0.98940093499164993259615417,
};
constexpr double kGLWeight[kGLHalf] = {
    0.18945061045506849628539672, 0.18260341504492358886676366,
    0.16915651939500253818931208, 0.14959598881657673208150173,
    0.12462897125553387205247628, 0.09515851168249278480992510,
    0.06225352393864789286284384, 0.02715245941175409485178057,
};

double gl16(const std::function<double(double)>& h, double a, double b) {
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < kGLHalf; ++i)
        acc += kGLWeight[i] * (h(c - r * kGLNode[i]) + h(c + r * kGLNode[i]));
    return acc * r;
}

} // namespace

double gaussian_average(const std::function<double(double)>& g, int k, double N,
                        const std::vector<double>& interior_jumps, const QuadratureConfig& cfg) {
    if (k < 1 || k > 10) throw std::invalid_argument("gaussian_average: k out of range");
    if (!(N >= 1.0)) throw std::invalid_argument("gaussian_average: N must be >= 1");
    const double scale = std::pow(N, 1.0 / k); // N^{1/k}
    const double W = cfg.support_sigmas / scale;
    const double max_w = cfg.max_piece_sigmas / scale;

    std::vector<double> cuts;
    cuts.push_back(-W);
    for (double u : interior_jumps)
        if (u > -W && u < W) cuts.push_back(u);
    cuts.push_back(W);
    std::sort(cuts.begin(), cuts.end());

    auto h = [&](double u) { return g(u) * std::exp(-(u * scale) * (u * scale)); };

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        if (!(b > a)) continue;
        const int nsub = std::max(1, int(std::ceil((b - a) / max_w)));
        const double w = (b - a) / nsub;
        for (int j = 0; j < nsub; ++j) total += gl16(h, a + j * w, a + (j + 1) * w);
    }
    return total * scale / std::sqrt(std::numbers::pi);
}

double smoothed_error_average(int k, const SieveTable& t, double x, double N,
                              const QuadratureConfig& cfg) {
    if (k < 2 || k > 10) throw std::invalid_argument("smoothed_error_average: k out of range");
    if (!(x > 0.0)) throw std::invalid_argument("smoothed_error_average: x must be > 0");
    if (!(N >= 1.0)) throw std::invalid_argument("smoothed_error_average: N must be >= 1");

    const double scale = std::pow(N, 1.0 / k);
    const double W = cfg.support_sigmas / scale;
    const double xk = std::pow(x, double(k));
    const double top = xk * std::exp(W / x);
    if (top > double(t.limit))
        throw std::out_of_range("smoothed_error_average: needs table limit >= " +
                                std::to_string(std::uint64_t(top) + 1) + ", have " +
                                std::to_string(t.limit));

    // the integrand jumps where x^k e^{u/x} crosses an integer j
    const double jlo = std::ceil(xk * std::exp(-W / x));
    std::vector<double> jumps;
    for (double j = std::max(1.0, jlo); j <= top; j += 1.0)
        jumps.push_back(x * std::log(j / xk));

    const ErrKind kind = (k == 2) ? ErrKind::Divisor() : ErrKind::Piltz(k);
    auto g = [&](double u) { return error_term(kind, t, xk * std::exp(u / x)); };
    return gaussian_average(g, k, N, jumps, cfg);
}

double smoothed_series_sum(int k, const SieveTable& t, double x, double N, std::uint32_t cutoff,
                           TailReport* tail) {
    if (!(x > 0.0)) throw std::invalid_argument("smoothed_series_sum: x must be > 0");
    const ResonanceSeries s = piltz_series(t, k, N, cutoff, tail);
    const double pre = std::pow(x, double(k - 1) / 2.0) / (std::numbers::pi * std::sqrt(double(k)));
    return pre * eval_series(s, dd{x});
}

} // namespace errhunt
