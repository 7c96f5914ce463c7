#include "errhunt/resonance.hpp"

#include "errhunt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace errhunt {

namespace {

const std::vector<std::uint32_t>& weight_array(const SieveTable& t, ErrKind kind) {
    switch (kind.tag) {
    case ErrKind::divisor: return t.d;
    case ErrKind::circle: return t.r;
    case ErrKind::piltz:
        if (kind.k == 2) return t.d;
        {
            auto it = t.dk.find(kind.k);
            if (it == t.dk.end())
                throw std::invalid_argument("build_set: table lacks d_" + std::to_string(kind.k));
            return it->second;
        }
    }
    throw std::logic_error("unreachable");
}

} // namespace

ResonanceSet build_set(const SieveTable& t, ErrKind kind, double N, double lambda_param,
                       bool mod4, std::uint32_t cap) {
    if (!(N > std::numbers::e))
        throw std::invalid_argument("build_set: N must exceed e so loglog N > 0");
    if (!(lambda_param > 0.0)) throw std::invalid_argument("build_set: lambda_param > 0 required");
    if (kind.tag == ErrKind::piltz && (kind.k < 2 || kind.k > 10))
        throw std::invalid_argument("build_set: piltz k must be in [2, 10]");

    ResonanceSet s;
    s.N = N;
    s.lambda_param = lambda_param;
    s.mod4_restricted = mod4;
    s.r = int(std::floor(lambda_param * std::log(std::log(N))));
    if (s.r < 1)
        throw degenerate_parameters_error("build_set: floor(lambda*loglog N) = " +
                                          std::to_string(s.r) + " < 1");
    if (kind.tag == ErrKind::piltz) {
        s.lo = std::ldexp(N, -kind.k);
        s.hi = std::pow(1.5, kind.k) * N;
    } else {
        s.lo = N / 4.0;
        s.hi = 2.25 * N;
    }
    const std::uint32_t mlo = std::uint32_t(std::max(1.0, std::ceil(s.lo)));
    const std::uint32_t mhi = std::uint32_t(std::floor(s.hi));
    if (mhi > t.limit)
        throw std::out_of_range("build_set: interval reaches " + std::to_string(mhi) +
                                " past table limit " + std::to_string(t.limit));

    for (std::uint32_t m = mlo; m <= mhi; ++m)
        if (t.omega[m] == s.r && (!mod4 || t.p1mod4[m])) s.members.push_back(m);
    s.full_count = s.members.size();

    if (cap > 0 && s.members.size() > cap) {
        const auto& w = weight_array(t, kind);
        std::stable_sort(s.members.begin(), s.members.end(),
                         [&](std::uint32_t a, std::uint32_t b) {
                             if (w[a] != w[b]) return w[a] > w[b];
                             return a < b;
                         });
        s.members.resize(cap);
        std::sort(s.members.begin(), s.members.end());
    }
    return s;
}

double cardinality_estimate(double N, double lambda_param, bool mod4) {
    if (!(N >= 16.0)) throw std::invalid_argument("cardinality_estimate: N >= 16 required");
    if (!(lambda_param > 0.0))
        throw std::invalid_argument("cardinality_estimate: lambda_param > 0 required");
    const double lam = lambda_param;
    double e = lam - 1.0 - lam * std::log(lam);
    if (mod4) e -= lam * std::numbers::ln2;
    const double ll = std::log(std::log(N));
    return N / std::sqrt(ll) * std::pow(std::log(N), e);
}

double s_of_m(const SieveTable& t, std::uint32_t M, std::uint32_t limit) {
    if (M < 1) throw std::invalid_argument("s_of_m: M >= 1 required");
    if (limit < 4) throw std::invalid_argument("s_of_m: limit >= 4 required");
    if (limit > t.limit)
        throw std::out_of_range("s_of_m: limit " + std::to_string(limit) + " exceeds table " +
                                std::to_string(t.limit));
    if (M > limit / 2)
        throw resource_limit_error("s_of_m: need limit >= " + std::to_string(2 * std::uint64_t(M)) +
                                   " to stabilize the top-" + std::to_string(M) + " selection");

    auto top_sum = [&](std::uint32_t lim) {
        std::vector<double> v(lim);
        for (std::uint32_t n = 1; n <= lim; ++n)
            v[n - 1] = double(t.d[n]) * std::pow(double(n), -0.75);
        std::nth_element(v.begin(), v.begin() + (M - 1), v.end(), std::greater<double>());
        std::sort(v.begin(), v.begin() + M, std::greater<double>());
        double s = 0.0;
        for (std::uint32_t i = 0; i < M; ++i) s += v[i];
        return s;
    };

    const double half = top_sum(limit / 2);
    const double full = top_sum(limit);
    // identical winning multisets summed in descending order give bit-equal sums
    if (half != full)
        throw resource_limit_error(
            "s_of_m: top-" + std::to_string(M) +
            " selection differs between limit/2 and limit; grow limit beyond " +
            std::to_string(limit));
    return full;
}

double optimal_lambda(ErrKind kind) {
    switch (kind.tag) {
    case ErrKind::divisor: return std::pow(2.0, 4.0 / 3.0);
    case ErrKind::circle: return std::pow(2.0, 1.0 / 3.0);
    case ErrKind::piltz: {
        if (kind.k < 2) throw std::invalid_argument("optimal_lambda: piltz k >= 2 required");
        const double k = double(kind.k);
        return std::pow(k, 2.0 * k / (k + 1.0));
    }
    }
    throw std::logic_error("unreachable");
}

double exponent_objective(ErrKind kind, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("exponent_objective: t > 0 required");
    const double h = t - 1.0 - t * std::log(t);
    switch (kind.tag) {
    case ErrKind::divisor: return t * std::numbers::ln2 + 0.75 * h;
    case ErrKind::circle: return 0.25 * t * std::numbers::ln2 + 0.75 * h;
    case ErrKind::piltz: {
        if (kind.k < 2) throw std::invalid_argument("exponent_objective: piltz k >= 2 required");
        const double k = double(kind.k);
        return t * std::log(k) + (k + 1.0) / (2.0 * k) * h;
    }
    }
    throw std::logic_error("unreachable");
}

double prior_exponent(ErrKind kind) {
    switch (kind.tag) {
    case ErrKind::divisor: return (3.0 + 2.0 * std::numbers::ln2) / 4.0;
    case ErrKind::circle: return std::numbers::ln2 / 4.0;
    case ErrKind::piltz: break;
    }
    throw std::invalid_argument("prior_exponent: no reference value for piltz");
}

} // namespace errhunt
