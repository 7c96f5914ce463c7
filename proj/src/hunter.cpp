#include "errhunt/hunter.hpp"

#include "errhunt/errors.hpp"
#include "errhunt/kernels.hpp"
#include "errhunt/parallel.hpp"
#include "errhunt/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace errhunt {

namespace {

constexpr double kPi = std::numbers::pi;

double window_key(HuntSide side, double v) {
    switch (side) {
    case HuntSide::two_sided: return std::fabs(v);
    case HuntSide::positive: return v;
    case HuntSide::negative: return -v;
    }
    return 0.0;
}

struct WindowBest {
    double x = 0.0;
    double value = 0.0;
};

// Deterministic parallel argmax over the window grid: per-block bests are
// merged in ascending block order and only a strictly larger key wins, so
// the smallest qualifying grid index is chosen at any thread count.
WindowBest window_extremum(const ResonanceSeries& s, dd center, double half, double step,
                           HuntSide side) {
    const std::int64_t npts = std::int64_t(std::floor(2.0 * half / step + 1e-9)) + 1;
    const std::int64_t block = std::int64_t(kEvalBlock);
    const std::int64_t nblocks = (npts + block - 1) / block;
    struct Best {
        double key = -std::numeric_limits<double>::infinity();
        double val = 0.0;
        std::int64_t idx = -1;
    };
    std::vector<Best> bb(static_cast<std::size_t>(nblocks));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = 0; b < nblocks; ++b) {
        Best loc;
        const std::int64_t i1 = std::min(npts, (b + 1) * block);
        for (std::int64_t i = b * block; i < i1; ++i) {
            const double off = std::fma(double(i), step, -half);
            const double v = eval_series_serial(s, center + off);
            const double key = window_key(side, v);
            if (key > loc.key) {
                loc.key = key;
                loc.val = v;
                loc.idx = i;
            }
        }
        bb[std::size_t(b)] = loc;
    }
    Best g;
    for (const Best& cand : bb)
        if (cand.idx >= 0 && cand.key > g.key) g = cand;
    WindowBest out;
    out.value = g.val;
    out.x = to_double(center + std::fma(double(g.idx), step, -half));
    return out;
}

struct Plan {
    ErrKind kind;
    double X = 0.0;
    int L = 0;
    double N_req = 0.0, N = 0.0, lambda = 0.0;
    std::uint32_t anchor = 0;  // n* as a series n-value
    int r = 0;
    std::vector<std::uint32_t> members;
    ResonanceSeries series;
    HuntSide side = HuntSide::two_sided;
    double window_step = 0.0;
    ApproxTarget target;
};

Plan make_plan(const HuntConfig& cfg, const SieveTable& t) {
    if (!(cfg.X >= 2.0)) throw std::invalid_argument("hunt: X >= 2 required");
    if (cfg.L < 2 || cfg.L > 16) throw std::invalid_argument("hunt: L must be in [2, 16]");
    if (cfg.cutoff < 1 || cfg.cutoff > t.limit)
        throw std::invalid_argument("hunt: cutoff must be within the sieve");
    Plan p;
    p.kind = cfg.kind;
    p.X = cfg.X;
    p.L = cfg.L;
    p.lambda = cfg.lambda_param > 0.0 ? cfg.lambda_param : optimal_lambda(cfg.kind);
    p.N_req = cfg.N > 0.0 ? cfg.N : recipe_N(cfg.kind, cfg.X, p.lambda, cfg.N_coef);
    std::int64_t a = std::llround(p.N_req);
    if (a < 2) a = 2;
    if (std::uint64_t(a) > cfg.cutoff)
        throw degenerate_parameters_error("hunt: anchor " + std::to_string(a) +
                                          " beyond cutoff " + std::to_string(cfg.cutoff));
    p.anchor = std::uint32_t(a);
    // anchoring N on the integer n* keeps every member's frequency inside
    // the bound hypothesis [lambda_A/2, 3 lambda_A/2] exactly
    p.N = double(a);
    switch (cfg.kind.tag) {
    case ErrKind::divisor: p.series = divisor_series(t, cfg.cutoff); break;
    case ErrKind::circle: p.series = circle_series(t, cfg.cutoff); break;
    case ErrKind::piltz: p.series = piltz_series(t, cfg.kind.k, p.N, cfg.cutoff); break;
    }
    ResonanceSet rs = build_set(t, cfg.kind, p.N, p.lambda,
                                cfg.kind.tag == ErrKind::circle, cfg.m_cap);
    p.r = rs.r;
    p.members = std::move(rs.members);
    if (p.members.empty())
        throw degenerate_parameters_error("hunt: resonance set empty at N = " +
                                          std::to_string(p.N));
    if (p.members.back() > cfg.cutoff)
        throw degenerate_parameters_error("hunt: member " + std::to_string(p.members.back()) +
                                          " beyond cutoff " + std::to_string(cfg.cutoff));
    if (cfg.kind.tag == ErrKind::piltz) {
        if (cfg.kind.k % 8 == 3) p.side = HuntSide::positive;
        else if (cfg.kind.k % 8 == 7) p.side = HuntSide::negative;
    }
    const double step_cap = 1.0 / (20.0 * p.series.lambda.back().hi);
    if (cfg.window_step == 0.0) {
        p.window_step = step_cap;
    } else if (cfg.window_step > step_cap * (1.0 + 1e-12)) {
        throw std::invalid_argument("hunt: window_step exceeds 1/(20 lambda_max)");
    } else {
        p.window_step = cfg.window_step;
    }
    std::vector<dd> freqs;
    for (std::uint32_t m : p.members) freqs.push_back(p.series.lambda[m - 1]);
    p.target = make_target(std::move(freqs), cfg.L, cfg.X);
    return p;
}

ApproxSolution dioph_stage(const Plan& p, const HuntConfig& cfg) {
    SearchDiagnostics diag;
    std::optional<ApproxSolution> sol;
    if (cfg.method == HuntConfig::Method::scan) {
        try {
            sol = scan_search(p.target, 0.0, cfg.dioph_budget, &diag);
        } catch (const budget_exceeded_error&) {
            sol = scan_search_capped(p.target, 0.0, cfg.dioph_budget, &diag);
        }
    } else {
        sol = lattice_search(p.target, 96, &diag);
    }
    if (sol) return *sol;
    // best effort: the closest near-miss on the default grid, else the range start
    const double tau = default_scan_step(p.target);
    std::int64_t j;
    if (std::isfinite(diag.best_achieved) && diag.best_x > 0.0) {
        j = std::llround(diag.best_x / tau);
    } else {
        j = std::int64_t(std::floor(p.target.X / tau));
        while (double(j) * tau < p.target.X) ++j;
    }
    ApproxSolution s;
    s.x0 = two_prod(double(j), tau);
    double worst = 0.0;
    for (const dd& f : p.target.freqs) worst = std::max(worst, frac_dist(f, s.x0));
    s.achieved = worst;
    s.method = cfg.method == HuntConfig::Method::scan ? ApproxSolution::Method::scan
                                                      : ApproxSolution::Method::lattice;
    s.certified = worst <= p.target.quality;
    const double xd = to_double(s.x0);
    s.in_range = xd >= p.target.X && xd <= p.target.bound;
    s.grid_index = j;
    s.grid_step = tau;
    return s;
}

struct SmoothStage {
    std::vector<double> values;  // l = 1..L
    int ell0 = 1;
    double at0 = 0.0;
    double member_mass = 0.0;
    bool averaging_ok = false;
    bool selection_ok = false;
};

SmoothStage smooth_stage(const Plan& p, dd x0) {
    const std::size_t aidx = p.anchor - 1;
    const bool two = p.side == HuntSide::two_sided;
    SmoothStage st;
    st.at0 = two ? bandpass_smooth(p.series, aidx, dd{0.0})
                 : lowpass_smooth(p.series, aidx, dd{0.0});
    double best = -std::numeric_limits<double>::infinity();
    for (int l = 1; l <= p.L; ++l) {
        const dd xl = x0 * double(l);
        const double v = two ? bandpass_smooth(p.series, aidx, xl)
                             : lowpass_smooth(p.series, aidx, xl);
        st.values.push_back(v);
        if (v > best) {
            best = v;
            st.ell0 = l;
        }
    }
    for (std::uint32_t m : p.members) st.member_mass += p.series.f[m - 1];
    double avg = st.at0;  // triangle-weighted sum over l = -L..L, folded by evenness
    for (int l = 1; l < p.L; ++l)
        avg += 2.0 * triangle_kernel(double(l) / double(p.L)) * st.values[std::size_t(l - 1)];
    st.averaging_ok = avg >= double(p.L) / 8.0 * st.member_mass - 1e-8;
    st.selection_ok = best >= st.member_mass / 8.0 - st.at0 / double(p.L - 1) - 1e-8;
    return st;
}

} // namespace

double resonance_lower_bound(const ResonanceSeries& s, const std::vector<std::uint32_t>& members,
                             std::size_t anchor_index, int L, double X, BoundSide side) {
    if (L < 2) throw std::invalid_argument("resonance_lower_bound: L >= 2 required");
    if (!(X > 0.0)) throw std::invalid_argument("resonance_lower_bound: X > 0 required");
    if (anchor_index >= s.lambda.size())
        throw std::invalid_argument("resonance_lower_bound: anchor outside series");
    if (members.empty()) throw invalid_set_error("resonance_lower_bound: empty member set");
    const double lam_a = to_double(s.lambda[anchor_index]);
    std::string bad;
    double mass = 0.0;
    for (std::uint32_t m : members) {
        bool ok = m >= 1 && std::size_t(m) <= s.f.size();
        if (ok) {
            const double lm = to_double(s.lambda[m - 1]);
            ok = lm >= 0.5 * lam_a * (1.0 - 1e-9) && lm <= 1.5 * lam_a * (1.0 + 1e-9);
        }
        if (!ok) {
            if (!bad.empty()) bad += ' ';
            bad += std::to_string(m);
            continue;
        }
        mass += s.f[m - 1];
    }
    if (!bad.empty())
        throw invalid_set_error(
            "resonance_lower_bound: members outside [lambda_A/2, 3 lambda_A/2]: " + bad);
    const dd two_lam_a = s.lambda[anchor_index] * 2.0;
    double low = 0.0;
    for (std::size_t i = 0; i < s.lambda.size(); ++i)
        if (s.lambda[i] <= two_lam_a) low += s.f[i];
    const double c = side == BoundSide::two_sided ? 4.0 : 2.0;
    return mass / 8.0 - low / double(L - 1) - c * s.weight_sum / (kPi * kPi * X * lam_a);
}

double recipe_N(ErrKind kind, double X, double lambda_param, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("recipe_N: c > 0 required");
    if (!(lambda_param > 0.0)) throw std::invalid_argument("recipe_N: lambda_param > 0 required");
    const double l1 = std::log(X);
    const double l2 = std::log(l1);
    const double l3 = std::log(l2);
    if (!(l3 > 0.0))
        throw std::invalid_argument("recipe_N: X too small for the iterated-log recipe");
    const double lam = lambda_param;
    double e = lam - 1.0 - lam * std::log(lam);
    if (kind.tag == ErrKind::circle) e -= lam * std::numbers::ln2;
    return c * l1 * std::pow(l2, -e) * std::pow(l3, -0.5);
}

double recipe_L(ErrKind kind, double X) {
    const double l2 = std::log(std::log(X));
    if (!(l2 > 0.0)) return 0.0;  // metadata only; undefined this small
    if (kind.tag == ErrKind::piltz) {
        const double k = double(kind.k);
        return std::pow(l2, k * k * k + 20.0);
    }
    return std::pow(l2, 10.0);
}

HuntRecord hunt(const HuntConfig& cfg, const SieveTable& t) {
    const Plan p = make_plan(cfg, t);
    const ApproxSolution sol = dioph_stage(p, cfg);
    const SmoothStage sm = smooth_stage(p, sol.x0);

    HuntRecord rec;
    rec.kind = p.kind;
    rec.X = p.X;
    rec.L = p.L;
    rec.N = p.N;
    rec.N_requested = p.N_req;
    rec.lambda_param = p.lambda;
    rec.r = p.r;
    rec.anchor = p.anchor;
    rec.members = p.members;
    rec.theory_L = recipe_L(p.kind, p.X);
    rec.x0 = to_double(sol.x0);
    rec.x0_achieved = sol.achieved;
    rec.x0_certified = sol.certified;
    rec.x0_in_range = sol.in_range;
    rec.F1_values = sm.values;
    rec.ell0 = sm.ell0;
    rec.averaging_ok = sm.averaging_ok;
    rec.selection_ok = sm.selection_ok;
    rec.side = p.side;
    rec.window_step = p.window_step;

    const dd center = sol.x0 * double(sm.ell0);
    rec.window_center = to_double(center);
    const WindowBest wb = window_extremum(p.series, center, p.X / 2.0, p.window_step, p.side);
    rec.x_best = wb.x;
    rec.F_value = wb.value;
    rec.lower_bound = resonance_lower_bound(
        p.series, p.members, p.anchor - 1, p.L, p.X,
        p.side == HuntSide::two_sided ? BoundSide::two_sided : BoundSide::one_sided);
    rec.bound_satisfied = window_key(p.side, rec.F_value) >= rec.lower_bound - 1e-9;
    rec.certified_in_range = sol.certified && sol.in_range;

    const int k = p.kind.tag == ErrKind::piltz ? p.kind.k : 2;
    const double y = p.kind.tag == ErrKind::piltz ? std::pow(rec.x_best, double(k))
                                                  : rec.x_best * rec.x_best;
    double pre = 0.0, norm_fallback = 0.0, c0 = 0.0;
    switch (p.kind.tag) {
    case ErrKind::divisor: // constant term of the exact summation formula
        pre = std::sqrt(rec.x_best) / (kPi * std::numbers::sqrt2);
        norm_fallback = 1.0 / (kPi * std::numbers::sqrt2);
        c0 = 0.25;
        break;
    case ErrKind::circle:
        pre = -std::sqrt(rec.x_best) / kPi;
        norm_fallback = 1.0 / kPi;
        c0 = -1.0;
        break;
    case ErrKind::piltz: // smoothed comparison; no pointwise constant applies
        pre = std::pow(rec.x_best, 0.5 * double(k - 1)) / (kPi * std::sqrt(double(k)));
        norm_fallback = 1.0 / (kPi * std::sqrt(double(k)));
        break;
    }
    rec.approx_err = c0 + pre * rec.F_value;
    const bool have_counts =
        p.kind.tag != ErrKind::piltz || k == 2 || t.dk.count(k) > 0;
    if (y <= double(t.limit) && have_counts) {
        rec.exact_err = error_term(p.kind, t, y);
        rec.normalized_score =
            std::fabs(*rec.exact_err) / std::pow(y, normalization_exponent(p.kind));
    } else {
        rec.normalized_score = std::fabs(rec.F_value) * norm_fallback;
    }
    return rec;
}

namespace {

struct VariantOutcome {
    bool ok = false;
    std::string what;
};

VariantOutcome run_variant(const std::vector<double>& f, const std::vector<dd>& lam, double beta,
                           const std::vector<std::uint32_t>& members, std::size_t anchor_index,
                           int L, double X, HuntSide side) {
    const ResonanceSeries s = make_series(f, lam, beta);
    std::vector<dd> freqs;
    for (std::uint32_t m : members) freqs.push_back(lam[m - 1]);
    const ApproxTarget target = make_target(std::move(freqs), L, X);
    SearchDiagnostics diag;
    const auto sol = scan_search(target, 0.0, std::uint64_t(1) << 34, &diag);
    if (!sol) return {false, "no aligned x0 found in the guaranteed range"};

    const bool two = side == HuntSide::two_sided;
    int ell0 = 1;
    double best = -std::numeric_limits<double>::infinity();
    for (int l = 1; l <= L; ++l) {
        const double v = two ? bandpass_smooth(s, anchor_index, sol->x0 * double(l))
                             : lowpass_smooth(s, anchor_index, sol->x0 * double(l));
        if (v > best) {
            best = v;
            ell0 = l;
        }
    }
    const double step = 1.0 / (20.0 * lam.back().hi);
    const WindowBest wb = window_extremum(s, sol->x0 * double(ell0), X / 2.0, step, side);
    const double rhs = resonance_lower_bound(s, members, anchor_index, L, X,
                                             two ? BoundSide::two_sided : BoundSide::one_sided);
    const double got = window_key(side, wb.value);
    if (got < rhs - 1e-9)
        return {false, "extremum " + std::to_string(got) + " below bound " + std::to_string(rhs)};
    const double xmax = target.bound * 6.0 * double(L);  // (6L)^{M+1} X
    if (wb.x < X / 2.0 - 1e-9 || wb.x > xmax * (1.0 + 1e-12))
        return {false, "witness x = " + std::to_string(wb.x) + " outside [X/2, (6L)^{M+1} X]"};
    return {true, {}};
}

} // namespace

ConstructionReport verify_construction(int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("verify_construction: trials >= 1 required");
    rng64 g(seed);
    ConstructionReport rep;
    rep.trials = trials;
    for (int trial = 0; trial < trials; ++trial) {
        const int terms = int(uniform_int(g, 1, 30));
        std::vector<double> f(static_cast<std::size_t>(terms));
        std::vector<dd> lam(static_cast<std::size_t>(terms));
        for (int i = 0; i < terms; ++i) {
            f[std::size_t(i)] = uniform01(g);
            lam[std::size_t(i)] = sqrt_dd(double(i + 1)) * 2.0;
        }
        const std::size_t aidx = std::size_t(uniform_int(g, 0, terms - 1));
        const double lam_a = lam[aidx].hi;
        std::vector<std::uint32_t> eligible;
        for (int i = 0; i < terms; ++i)
            if (lam[std::size_t(i)].hi >= 0.5 * lam_a && lam[std::size_t(i)].hi <= 1.5 * lam_a)
                eligible.push_back(std::uint32_t(i + 1));
        const int msz =
            int(uniform_int(g, 1, std::min<std::int64_t>(3, std::int64_t(eligible.size()))));
        for (int i = 0; i < msz; ++i) {
            const auto j = std::size_t(uniform_int(g, i, std::int64_t(eligible.size()) - 1));
            std::swap(eligible[std::size_t(i)], eligible[j]);
        }
        std::vector<std::uint32_t> members(eligible.begin(), eligible.begin() + msz);
        std::sort(members.begin(), members.end());
        const int L = int(uniform_int(g, 2, 3));
        const double X = uniform_real(g, 2.0, 8.0);
        const double beta1 = uniform_real(g, 0.0, 2.0 * kPi);

        const struct {
            double beta;
            HuntSide side;
            const char* tag;
        } variants[] = {
            {beta1, HuntSide::two_sided, "two-sided"},
            {0.0, HuntSide::positive, "one-sided beta=0"},
            {kPi, HuntSide::negative, "one-sided beta=pi"},
        };
        std::string what;
        for (const auto& v : variants) {
            const VariantOutcome out = run_variant(f, lam, v.beta, members, aidx, L, X, v.side);
            if (!out.ok) what += std::string(v.tag) + ": " + out.what + "; ";
        }
        if (what.empty()) ++rep.passes;
        else rep.failures.push_back({trial, what});
    }
    return rep;
}

BaselineSummary baseline_random(const HuntConfig& cfg, const SieveTable& t, int samples) {
    if (samples < 1) throw std::invalid_argument("baseline_random: samples >= 1 required");
    const Plan p = make_plan(cfg, t);
    const ApproxSolution sol = dioph_stage(p, cfg);
    const SmoothStage sm = smooth_stage(p, sol.x0);
    const double center = to_double(sol.x0 * double(sm.ell0));

    BaselineSummary b;
    b.samples = samples;
    b.lo = center - cfg.X / 2.0;
    b.hi = center + cfg.X / 2.0;
    const int k = cfg.kind.tag == ErrKind::piltz ? cfg.kind.k : 2;
    const double y_hi = cfg.kind.tag == ErrKind::piltz ? std::pow(b.hi, double(k)) : b.hi * b.hi;
    if (y_hi > double(t.limit))
        throw std::out_of_range("baseline_random: window end needs sieve limit >= " +
                                std::to_string(std::uint64_t(y_hi) + 1));
    const double e = normalization_exponent(cfg.kind);
    rng64 g(cfg.seed);
    std::vector<double> scores(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double x = uniform_real(g, b.lo, b.hi);
        const double y = cfg.kind.tag == ErrKind::piltz ? std::pow(x, double(k)) : x * x;
        scores[std::size_t(i)] = std::fabs(error_term(cfg.kind, t, y)) / std::pow(y, e);
    }
    std::sort(scores.begin(), scores.end());
    const auto q = [&](double pp) {
        return scores[std::size_t(std::floor(pp * double(samples - 1)))];
    };
    b.median = q(0.5);
    b.p90 = q(0.9);
    b.p99 = q(0.99);
    b.max = scores.back();
    return b;
}

} // namespace errhunt
