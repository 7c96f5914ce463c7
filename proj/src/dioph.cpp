#include "errhunt/dioph.hpp"

#include "errhunt/errors.hpp"
#include "errhunt/lll.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

namespace errhunt {

namespace {

constexpr std::int64_t kChunk = 1 << 15;
// Waves have a fixed chunk count so hit selection, evaluation counts and
// near-miss diagnostics never depend on how many threads ran the wave.
constexpr std::int64_t kChunksPerWave = 16;

double max_freq(const ApproxTarget& t) {
    double m = 0.0;
    for (const dd& f : t.freqs) m = std::max(m, f.hi);
    return m;
}

struct ChunkResult {
    std::int64_t hit = -1;  // first grid index in the chunk meeting quality
    double hit_ach = 0.0;
    std::int64_t best_j = -1;  // exact near-miss tracking
    double best = std::numeric_limits<double>::infinity();
    std::uint64_t examined = 0;
};

ChunkResult scan_chunk(const ApproxTarget& t, double step, std::int64_t j0, std::int64_t j1) {
    ChunkResult r;
    for (std::int64_t j = j0; j < j1; ++j) {
        const dd x = two_prod(double(j), step);
        double worst = 0.0;
        bool partial = false;
        for (const dd& f : t.freqs) {
            const double d = frac_dist(f, x);
            if (d > worst) worst = d;
            if (worst > t.quality && worst >= r.best) {
                partial = true;  // lower bound only; can't beat quality or near-miss
                break;
            }
        }
        ++r.examined;
        if (!partial) {
            if (worst < r.best) {
                r.best = worst;
                r.best_j = j;
            }
            if (worst <= t.quality) {
                r.hit = j;
                r.hit_ach = worst;
                break;
            }
        }
    }
    return r;
}

std::optional<ApproxSolution> scan_impl(const ApproxTarget& t, double step, std::uint64_t budget,
                                        bool cap_to_budget, SearchDiagnostics* diag,
                                        bool parallel) {
    if (t.freqs.empty()) throw std::invalid_argument("scan_search: no frequencies");
    if (!(t.quality > 0.0) || !(t.X > 0.0) || !(t.bound >= t.X))
        throw std::invalid_argument("scan_search: malformed target");
    if (step == 0.0) step = default_scan_step(t);
    const double step_max = t.quality / (2.0 * std::numbers::pi * max_freq(t));
    if (!(step > 0.0) || step > step_max * (1.0 + 1e-12))
        throw std::invalid_argument("scan_search: step must be in (0, quality/(2 pi lambda_max)]");

    std::int64_t j_begin = std::int64_t(std::floor(t.X / step));
    while (double(j_begin) * step < t.X) ++j_begin;
    std::int64_t j_end = std::int64_t(std::floor(t.bound / step));
    if (j_end < j_begin) j_end = j_begin;
    const std::uint64_t projected = std::uint64_t(j_end - j_begin) + 1;
    bool capped = false;
    if (projected > budget) {
        if (!cap_to_budget) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "scan_search: range needs %llu grid points at step %.3e, budget %llu",
                          (unsigned long long)projected, step, (unsigned long long)budget);
            throw budget_exceeded_error(buf);
        }
        capped = true;
        j_end = j_begin + std::int64_t(budget) - 1;
    }

    SearchDiagnostics local;
    std::optional<ApproxSolution> out;
    const std::int64_t total_chunks = (j_end - j_begin) / kChunk + 1;
    for (std::int64_t wave = 0; wave * kChunksPerWave < total_chunks && !out; ++wave) {
        const std::int64_t c0 = wave * kChunksPerWave;
        const std::int64_t c1 = std::min(c0 + kChunksPerWave, total_chunks);
        std::vector<ChunkResult> res(std::size_t(c1 - c0));
        if (parallel) {
#pragma omp parallel for schedule(dynamic)
            for (std::int64_t ci = 0; ci < c1 - c0; ++ci) {
                const std::int64_t a = j_begin + (c0 + ci) * kChunk;
                const std::int64_t b = std::min(a + kChunk, j_end + 1);
                res[std::size_t(ci)] = scan_chunk(t, step, a, b);
            }
        } else {
            for (std::int64_t ci = 0; ci < c1 - c0; ++ci) {
                const std::int64_t a = j_begin + (c0 + ci) * kChunk;
                const std::int64_t b = std::min(a + kChunk, j_end + 1);
                res[std::size_t(ci)] = scan_chunk(t, step, a, b);
            }
        }
        for (const ChunkResult& r : res) {
            local.points_examined += r.examined;
            if (r.best_j >= 0 && r.best < local.best_achieved) {
                local.best_achieved = r.best;
                local.best_x = double(r.best_j) * step;
            }
            if (r.hit >= 0 && !out) {
                ApproxSolution s;
                s.x0 = two_prod(double(r.hit), step);
                s.achieved = r.hit_ach;
                s.method = ApproxSolution::Method::scan;
                s.certified = true;
                s.in_range = true;
                s.grid_index = r.hit;
                s.grid_step = step;
                out = s;
            }
        }
    }
    if (!out && capped) local.truncated = true;
    if (diag) *diag = local;
    return out;
}

} // namespace

double frac_dist(dd lambda, dd x) {
    if (std::fabs(lambda.hi) * std::fabs(x.hi) > 1e14)
        throw precision_loss_error("frac_dist: |lambda*x| beyond 1e14 leaves too few fractional bits");
    return to_double(fabs(frac_centered(lambda * x)));
}

double dirichlet_range(int M, int L, double X) {
    if (M < 1 || L < 1 || !(X > 0.0))
        throw std::invalid_argument("dirichlet_range: need M >= 1, L >= 1, X > 0");
    const double v = std::pow(6.0 * double(L), double(M)) * X;
    if (!std::isfinite(v)) throw std::overflow_error("dirichlet_range: (6L)^M * X overflows");
    return v;
}

double default_scan_step(const ApproxTarget& t) {
    if (t.freqs.empty()) throw std::invalid_argument("default_scan_step: no frequencies");
    return t.quality / (4.0 * std::numbers::pi * max_freq(t));
}

ApproxTarget make_target(std::vector<dd> freqs, int L, double X) {
    if (freqs.empty()) throw std::invalid_argument("make_target: no frequencies");
    if (L < 1) throw std::invalid_argument("make_target: L >= 1 required");
    if (!(X > 0.0)) throw std::invalid_argument("make_target: X > 0 required");
    for (const dd& f : freqs)
        if (!(f.hi > 0.0)) throw std::invalid_argument("make_target: frequencies must be positive");
    for (std::size_t i = 0; i < freqs.size(); ++i)
        for (std::size_t j = i + 1; j < freqs.size(); ++j)
            if (freqs[i] == freqs[j])
                throw std::invalid_argument("make_target: duplicate frequency");
    ApproxTarget t;
    t.freqs = std::move(freqs);
    t.L = L;
    t.quality = 1.0 / (6.0 * double(L));
    t.X = X;
    t.bound = dirichlet_range(int(t.freqs.size()), L, X);
    return t;
}

std::optional<ApproxSolution> scan_search(const ApproxTarget& t, double step, std::uint64_t budget,
                                          SearchDiagnostics* diag) {
    return scan_impl(t, step, budget, false, diag, true);
}

std::optional<ApproxSolution> scan_search_capped(const ApproxTarget& t, double step,
                                                 std::uint64_t budget, SearchDiagnostics* diag) {
    return scan_impl(t, step, budget, true, diag, true);
}

std::optional<ApproxSolution> scan_search_serial(const ApproxTarget& t, double step,
                                                 std::uint64_t budget, SearchDiagnostics* diag) {
    return scan_impl(t, step, budget, false, diag, false);
}

std::optional<ApproxSolution> lattice_search(const ApproxTarget& t, int denom_bits,
                                             SearchDiagnostics* diag) {
    const int M = int(t.freqs.size());
    if (M < 1) throw std::invalid_argument("lattice_search: no frequencies");
    if (M > 12)
        throw std::invalid_argument("lattice_search: more than 12 frequencies; use scan_search");
    if (denom_bits < 16 || denom_bits > 512)
        throw std::invalid_argument("lattice_search: denom_bits must be in [16, 512]");
    if (!(t.quality > 0.0) || !(t.X > 0.0) || !(t.bound >= t.X))
        throw std::invalid_argument("lattice_search: malformed target");

    const double tau = default_scan_step(t);  // x candidates live on the scan grid
    const double t_max = t.bound / tau;
    // Tighten the goal by the reduction's approximation factor; candidates
    // are still certified against t.quality below.
    const double q_eff = t.quality / std::pow(2.0, 0.5 * double(M));

    // Basis rows: (w, A_1..A_M) and 2^b unit rows.  Short vectors make both
    // c0*w and 2^b * ||c0 * freqs[m] * tau|| small at once, so c0 is a grid
    // multiplier with small simultaneous error.
    const mpz_class two_b = mpz_class(1) << unsigned(denom_bits);
    const double we = std::log2(q_eff) - std::log2(t_max) + double(denom_bits);
    mpz_class w = 1;
    if (we >= 1.0) w = mpz_class(1) << unsigned(std::min(we, double(denom_bits + 64)));

    LatticeBasis basis(std::size_t(M) + 1, std::vector<mpz_class>(std::size_t(M) + 1));
    basis[0][0] = w;
    for (int m = 0; m < M; ++m) {
        mpf_class v(0, 320);
        v = t.freqs[std::size_t(m)].hi;
        v += t.freqs[std::size_t(m)].lo;
        v *= tau;
        mpf_mul_2exp(v.get_mpf_t(), v.get_mpf_t(), unsigned(denom_bits));
        v += 0.5;
        basis[0][std::size_t(m) + 1] = mpz_class(v);  // truncation of v+0.5 = rounding, v > 0
        basis[std::size_t(m) + 1][std::size_t(m) + 1] = two_b;
    }
    lll_reduce(basis);

    std::set<mpz_class> ts;
    auto add_t = [&](const mpz_class& col0) {
        if (col0 == 0) return;
        mpz_class c0;
        mpz_divexact(c0.get_mpz_t(), col0.get_mpz_t(), w.get_mpz_t());
        c0 = abs(c0);
        if (c0 != 0) ts.insert(c0);
    };
    for (const auto& row : basis) add_t(row[0]);
    // small combinations of the three shortest rows widen the pool
    const int R = std::min(3, M + 1);
    for (int c0 = -2; c0 <= 2; ++c0)
        for (int c1 = -2; c1 <= 2; ++c1)
            for (int c2 = -2; c2 <= 2; ++c2) {
                if (c0 == 0 && c1 == 0 && c2 == 0) continue;
                if (R < 2 && c1 != 0) continue;
                if (R < 3 && c2 != 0) continue;
                mpz_class v = c0 * basis[0][0];
                if (R >= 2) v += c1 * basis[1][0];
                if (R >= 3) v += c2 * basis[2][0];
                add_t(v);
            }

    SearchDiagnostics local;
    std::optional<ApproxSolution> best;
    int best_rank = -1;
    const double idx_cap = 9007199254740992.0 / 8.0;  // 2^50: grid index stays exact
    for (const mpz_class& tv : ts) {
        if (mpz_sizeinbase(tv.get_mpz_t(), 2) > 50) continue;
        const std::int64_t t0 = std::int64_t(tv.get_si());
        std::vector<std::int64_t> idx = {t0};
        if (double(t0) * tau < t.X) {
            const double mult = std::ceil(t.X / (double(t0) * tau));
            if (double(t0) * mult <= idx_cap) idx.push_back(t0 * std::int64_t(mult));
        }
        for (const std::int64_t j : idx) {
            const dd x = two_prod(double(j), tau);
            double worst = 0.0;
            bool usable = true;
            for (const dd& f : t.freqs) {
                double d;
                try {
                    d = frac_dist(f, x);
                } catch (const precision_loss_error&) {
                    usable = false;
                    break;
                }
                if (d > worst) worst = d;
            }
            if (!usable) continue;
            ++local.points_examined;
            const double xd = to_double(x);
            if (worst < local.best_achieved) {
                local.best_achieved = worst;
                local.best_x = xd;
            }
            const bool cert = worst <= t.quality;
            const bool inr = xd >= t.X && xd <= t.bound;
            const int rank = (cert ? 2 : 0) + (inr ? 1 : 0);
            if (rank > best_rank ||
                (rank == best_rank && best && j < best->grid_index)) {
                best_rank = rank;
                ApproxSolution s;
                s.x0 = x;
                s.achieved = worst;
                s.method = ApproxSolution::Method::lattice;
                s.certified = cert;
                s.in_range = inr;
                s.grid_index = j;
                s.grid_step = tau;
                best = s;
            }
        }
    }
    if (diag) *diag = local;
    if (best && best->certified) return best;
    return std::nullopt;
}

} // namespace errhunt
