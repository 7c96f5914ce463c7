#include "errhunt/errterm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace errhunt {

double normalization_exponent(ErrKind kind) {
    switch (kind.tag) {
    case ErrKind::divisor:
    case ErrKind::circle: return 0.25;
    case ErrKind::piltz:
        if (kind.k < 2 || kind.k > 10)
            throw std::invalid_argument("normalization_exponent: piltz k out of range");
        return double(kind.k - 1) / double(2 * kind.k);
    }
    throw std::invalid_argument("normalization_exponent: bad kind");
}

double error_term(ErrKind kind, const SieveTable& t, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("error_term: x must be > 0");
    switch (kind.tag) {
    case ErrKind::divisor:
        return double(summatory_d(t, x)) - main_term(2, x);
    case ErrKind::circle:
        return double(summatory_r(t, x)) - std::numbers::pi * x;
    case ErrKind::piltz:
        return double(summatory_dk(t, kind.k, x)) - main_term(kind.k, x);
    }
    throw std::invalid_argument("error_term: bad kind");
}

std::vector<ProfilePoint> error_profile(ErrKind kind, const SieveTable& t,
                                        const std::vector<double>& xs) {
    const double e = normalization_exponent(kind);
    std::vector<ProfilePoint> out;
    out.reserve(xs.size());
    for (double x : xs) {
        const double err = error_term(kind, t, x);
        out.push_back({x, err, err / std::pow(x, e)});
    }
    return out;
}

} // namespace errhunt
