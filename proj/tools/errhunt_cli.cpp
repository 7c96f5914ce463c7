// Command-line front end: error terms, series comparisons, diophantine
// alignment, resonance sets, and full hunts, with a shared sieve cache.

#include "errhunt/arith.hpp"
#include "errhunt/dioph.hpp"
#include "errhunt/errors.hpp"
#include "errhunt/errterm.hpp"
#include "errhunt/hunter.hpp"
#include "errhunt/resonance.hpp"
#include "errhunt/series.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

using namespace errhunt;
using nlohmann::json;

namespace {

ErrKind parse_kind(const std::string& s) {
    if (s == "divisor") return ErrKind::Divisor();
    if (s == "circle") return ErrKind::Circle();
    if (s.rfind("piltz:", 0) == 0) return ErrKind::Piltz(std::stoi(s.substr(6)));
    throw CLI::ValidationError("--kind/--case", "expected divisor, circle, or piltz:<k>");
}

std::string kind_name(ErrKind k) {
    switch (k.tag) {
        case ErrKind::Tag::divisor: return "divisor";
        case ErrKind::Tag::circle: return "circle";
        default: return "piltz:" + std::to_string(k.k);
    }
}

// "1,5,10" or "lo:hi:step"
std::vector<double> parse_points(const std::string& s) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        double lo = 0, hi = 0, step = 0;
        if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0 || hi < lo)
            throw CLI::ValidationError("range", "expected lo:hi:step with step > 0");
        for (double x = lo; x <= hi + 1e-9 * step; x += step) out.push_back(x);
    } else {
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t next = s.find(',', pos);
            if (next == std::string::npos) next = s.size();
            out.push_back(std::stod(s.substr(pos, next - pos)));
            pos = next + 1;
        }
    }
    if (out.empty()) throw CLI::ValidationError("points", "empty point list");
    return out;
}

// Sieve provider: load from cache when the cached table covers the request,
// otherwise build and (when a cache path is set) save.
struct SieveProvider {
    std::string cache_path;

    SieveTable get(std::uint32_t limit, const std::vector<int>& ks = {}) const {
        if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
            try {
                SieveTable t = load_sieve(cache_path);
                bool ok = t.limit >= limit;
                for (int k : ks) ok = ok && t.dk.count(k) > 0;
                if (ok) {
                    std::fprintf(stderr, "[sieve] cache %s: limit %u\n", cache_path.c_str(),
                                 t.limit);
                    return t;
                }
                std::fprintf(stderr, "[sieve] cache %s insufficient (limit %u < %u), rebuilding\n",
                             cache_path.c_str(), t.limit, limit);
            } catch (const std::exception& e) {
                std::fprintf(stderr, "[sieve] cache unusable: %s\n", e.what());
            }
        }
        std::fprintf(stderr, "[sieve] building tables to %u ...\n", limit);
        SieveTable t = build_sieve(limit, ks);
        if (!cache_path.empty()) {
            save_sieve(t, cache_path);
            std::fprintf(stderr, "[sieve] cached to %s\n", cache_path.c_str());
        }
        return t;
    }
};

json record_to_json(const HuntRecord& r) {
    json j;
    j["kind"] = kind_name(r.kind);
    j["X"] = r.X;
    j["L"] = r.L;
    j["N"] = r.N;
    j["N_requested"] = r.N_requested;
    j["lambda_param"] = r.lambda_param;
    j["r"] = r.r;
    j["anchor"] = r.anchor;
    j["members"] = r.members;
    j["theory_L"] = r.theory_L;
    j["x0"] = r.x0;
    j["x0_achieved"] = r.x0_achieved;
    j["x0_certified"] = r.x0_certified;
    j["x0_in_range"] = r.x0_in_range;
    j["F1_values"] = r.F1_values;
    j["ell0"] = r.ell0;
    j["averaging_ok"] = r.averaging_ok;
    j["selection_ok"] = r.selection_ok;
    j["side"] = r.side == HuntSide::two_sided ? "two_sided"
                : r.side == HuntSide::positive ? "positive"
                                               : "negative";
    j["window_center"] = r.window_center;
    j["window_step"] = r.window_step;
    j["x_best"] = r.x_best;
    j["F_value"] = r.F_value;
    j["lower_bound"] = r.lower_bound;
    j["bound_satisfied"] = r.bound_satisfied;
    j["certified_in_range"] = r.certified_in_range;
    if (r.exact_err) j["exact_err"] = *r.exact_err;
    else j["exact_err"] = nullptr;
    j["approx_err"] = r.approx_err;
    j["normalized_score"] = r.normalized_score;
    return j;
}

bool invariants_hold(const HuntRecord& r) {
    if (r.x0_certified && !(r.averaging_ok && r.selection_ok)) return false;
    if (r.certified_in_range && r.lower_bound > 0 && !r.bound_satisfied) return false;
    return true;
}

std::uint32_t hunt_sieve_limit(const HuntConfig& cfg) {
    // enough for the series; exact scoring upgrades opportunistically
    return std::max<std::uint32_t>(cfg.cutoff, 4096);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for divisor/circle error-term extremes"};
    app.require_subcommand(1);

    SieveProvider sieve;
    app.add_option("--sieve-cache", sieve.cache_path, "binary sieve cache file");

    // ---- errterm ----------------------------------------------------------
    auto* c_err = app.add_subcommand("errterm", "exact error terms as CSV");
    std::string err_kind = "divisor", err_x;
    std::uint32_t err_limit = 0;
    c_err->add_option("--kind", err_kind, "divisor | circle | piltz:<k>");
    c_err->add_option("--x", err_x, "points: comma list or lo:hi:step")->required();
    c_err->add_option("--sieve-limit", err_limit, "override table size");

    // ---- series compare / prop4 ------------------------------------------
    auto* c_series = app.add_subcommand("series", "truncated oscillatory series");
    auto* c_cmp = c_series->add_subcommand("compare", "exact vs series approximation (CSV)");
    std::string cmp_kind = "divisor", cmp_range;
    std::uint32_t cmp_cutoff = 100000;
    c_cmp->add_option("--kind", cmp_kind, "divisor | circle");
    c_cmp->add_option("--cutoff", cmp_cutoff, "series truncation");
    c_cmp->add_option("--y-range", cmp_range, "lo:hi:step or comma list of y")->required();

    auto* c_p4 = c_series->add_subcommand("prop4", "smoothed-average identity check");
    int p4_k = 2;
    double p4_x = 5.0, p4_N = 10.0;
    std::uint32_t p4_cutoff = 0;
    c_p4->add_option("--k", p4_k, "Piltz order");
    c_p4->add_option("--x", p4_x, "evaluation point (x >= 2)");
    c_p4->add_option("--N", p4_N, "damping scale (N >= 2)");
    c_p4->add_option("--cutoff", p4_cutoff, "series truncation override");

    // ---- dioph -------------------------------------------------------------
    auto* c_dio = app.add_subcommand("dioph", "simultaneous approximation point (JSON)");
    std::string dio_freqs, dio_method = "scan";
    int dio_L = 2;
    double dio_X = 1.0;
    std::uint64_t dio_budget = kDefaultScanBudget;
    int dio_bits = 96;
    c_dio->add_option("--freqs", dio_freqs, "comma list of frequencies")->required();
    c_dio->add_option("--L", dio_L, "multiple count (quality 1/(6L))");
    c_dio->add_option("--X", dio_X, "lower end of the search range");
    c_dio->add_option("--method", dio_method, "scan | lattice");
    c_dio->add_option("--budget", dio_budget, "scan evaluation budget");
    c_dio->add_option("--denom-bits", dio_bits, "lattice denominator bits");

    // ---- resonance ---------------------------------------------------------
    auto* c_res = app.add_subcommand("resonance", "resonance sets and ideal sums");
    auto* c_build = c_res->add_subcommand("build", "construct a resonance set (JSON)");
    double rb_N = 100.0, rb_lambda = 0.0;
    std::string rb_case = "divisor";
    bool rb_mod4 = false;
    std::uint32_t rb_cap = 0;
    c_build->add_option("--N", rb_N, "scale")->required();
    c_build->add_option("--lambda", rb_lambda, "factor-count parameter (0 = optimal)");
    c_build->add_option("--case", rb_case, "divisor | circle | piltz:<k>");
    c_build->add_flag("--mod4", rb_mod4, "restrict to prime factors 1 mod 4");
    c_build->add_option("--cap", rb_cap, "keep only the heaviest members");

    auto* c_som = c_res->add_subcommand("som", "sum of the M largest d(n)n^{-3/4}");
    int som_M = 10;
    std::uint32_t som_limit = 100000;
    c_som->add_option("--M", som_M, "how many top terms")->required();
    c_som->add_option("--limit", som_limit, "search bound");

    // ---- hunt --------------------------------------------------------------
    auto* c_hunt = app.add_subcommand("hunt", "resonance hunt (JSON lines)");
    c_hunt->fallthrough(); // let hunt-level flags appear after `baseline`
    std::string h_case = "divisor", h_lambda = "auto", h_method = "scan";
    HuntConfig hc;
    double h_N = 0.0;
    c_hunt->add_option("--case", h_case, "divisor | circle | piltz:<k>");
    c_hunt->add_option("--X", hc.X, "scale (window width and range start)");
    c_hunt->add_option("--L", hc.L, "multiples of the alignment point");
    c_hunt->add_option("--N-coef", hc.N_coef, "coefficient c in the N recipe");
    c_hunt->add_option("--N", h_N, "explicit resonance scale (overrides recipe)");
    c_hunt->add_option("--lambda", h_lambda, "'auto' or a positive value");
    c_hunt->add_option("--cutoff", hc.cutoff, "series truncation");
    c_hunt->add_option("--m-cap", hc.m_cap, "resonance set size cap");
    c_hunt->add_option("--method", h_method, "scan | lattice");
    c_hunt->add_option("--budget", hc.dioph_budget, "scan evaluation budget");
    c_hunt->add_option("--seed", hc.seed, "rng seed (baseline sampling)");
    c_hunt->add_option("--sieve-limit", err_limit, "sieve size for exact scoring");

    auto* c_vfy = c_hunt->add_subcommand("verify-lemma3", "randomized construction check");
    int v_trials = 100;
    std::uint64_t v_seed = 42;
    c_vfy->add_option("--trials", v_trials, "number of random constructions");
    c_vfy->add_option("--seed", v_seed, "rng seed");

    auto* c_base = c_hunt->add_subcommand("baseline", "random-sampling comparison");
    int b_samples = 10000;
    c_base->add_option("--samples", b_samples, "random points in the hunt window");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_err) {
            ErrKind kind = parse_kind(err_kind);
            std::vector<double> xs = parse_points(err_x);
            double xmax = 0;
            for (double x : xs) xmax = std::max(xmax, x);
            std::uint32_t lim = err_limit ? err_limit : std::uint32_t(xmax) + 1;
            std::vector<int> ks;
            if (kind.tag == ErrKind::Tag::piltz && kind.k >= 3) ks.push_back(kind.k);
            SieveTable t = sieve.get(lim, ks);
            std::printf("x,err,normalized\n");
            double e = normalization_exponent(kind);
            for (double x : xs) {
                double v = error_term(kind, t, x);
                std::printf("%.10g,%.10g,%.10g\n", x, v, v / std::pow(x, e));
            }
        } else if (*c_cmp) {
            ErrKind kind = parse_kind(cmp_kind);
            if (kind.tag == ErrKind::Tag::piltz)
                throw CLI::ValidationError("--kind", "compare supports divisor and circle");
            std::vector<double> ys = parse_points(cmp_range);
            double ymax = 0;
            for (double y : ys) ymax = std::max(ymax, y);
            SieveTable t = sieve.get(std::max<std::uint32_t>(cmp_cutoff, std::uint32_t(ymax) + 1));
            bool circ = kind.tag == ErrKind::Tag::circle;
            ResonanceSeries s = circ ? circle_series(t, cmp_cutoff) : divisor_series(t, cmp_cutoff);
            std::printf("y,exact,approx,abserr\n");
            for (double y : ys) {
                double exact = error_term(kind, t, y);
                double approx = circ ? approx_circle_err(s, y) : approx_divisor_err(s, y);
                std::printf("%.10g,%.10g,%.10g,%.10g\n", y, exact, approx,
                            std::fabs(exact - approx));
            }
        } else if (*c_p4) {
            if (p4_x < 2 || p4_N < 2)
                throw CLI::ValidationError("prop4", "requires x >= 2 and N >= 2");
            double W = 8.0 / std::pow(p4_N, 1.0 / p4_k);
            double need = std::pow(p4_x, p4_k) * std::exp(W / p4_x) + 2;
            std::uint32_t cutoff = p4_cutoff;
            if (!cutoff) {
                // Gaussian factor below 1e-16 relative to f(1)
                double lim = p4_N * std::pow(16.0 * std::numbers::ln10 / (std::numbers::pi *
                                                                          std::numbers::pi),
                                             p4_k / 2.0);
                cutoff = std::uint32_t(std::max(64.0, 2.0 * lim));
            }
            std::vector<int> ks;
            if (p4_k >= 3) ks.push_back(p4_k);
            SieveTable t =
                sieve.get(std::max<std::uint32_t>(std::uint32_t(need), cutoff), ks);
            double lhs = smoothed_error_average(p4_k, t, p4_x, p4_N);
            double rhs = smoothed_series_sum(p4_k, t, p4_x, p4_N, cutoff);
            std::printf("lhs,rhs,diff\n%.12g,%.12g,%.12g\n", lhs, rhs, std::fabs(lhs - rhs));
        } else if (*c_dio) {
            std::vector<double> fr = parse_points(dio_freqs);
            std::vector<dd> freqs;
            for (double f : fr) freqs.push_back(dd{f});
            ApproxTarget target = make_target(freqs, dio_L, dio_X);
            SearchDiagnostics diag;
            std::optional<ApproxSolution> sol;
            if (dio_method == "lattice") sol = lattice_search(target, dio_bits, &diag);
            else if (dio_method == "scan")
                sol = scan_search_capped(target, 0.0, dio_budget, &diag);
            else throw CLI::ValidationError("--method", "expected scan or lattice");
            json j;
            if (sol) {
                j["x0"] = to_double(sol->x0);
                j["achieved"] = sol->achieved;
                j["certified"] = sol->certified;
            } else {
                j["x0"] = diag.best_x;
                j["achieved"] = diag.best_achieved;
                j["certified"] = false;
            }
            j["method"] = dio_method;
            j["evaluations"] = diag.points_examined;
            std::printf("%s\n", j.dump(2).c_str());
        } else if (*c_build) {
            ErrKind kind = parse_kind(rb_case);
            if (rb_lambda <= 0) rb_lambda = optimal_lambda(kind);
            double hi = (kind.tag == ErrKind::Tag::piltz)
                            ? std::pow(1.5, kind.k) * rb_N
                            : 2.25 * rb_N;
            std::vector<int> ks;
            if (kind.tag == ErrKind::Tag::piltz && kind.k >= 3) ks.push_back(kind.k);
            SieveTable t = sieve.get(std::uint32_t(hi) + 2, ks);
            ResonanceSet m = build_set(t, kind, rb_N, rb_lambda, rb_mod4, rb_cap);
            json j;
            j["params"] = {{"N", m.N},     {"lambda", m.lambda_param},
                           {"case", rb_case}, {"mod4", m.mod4_restricted},
                           {"cap", rb_cap},   {"r", m.r},
                           {"lo", m.lo},      {"hi", m.hi}};
            j["member_count"] = m.members.size();
            j["full_count"] = m.full_count;
            if (!m.members.empty()) {
                j["first"] = m.members.front();
                j["last"] = m.members.back();
                std::uint32_t dmin = UINT32_MAX;
                for (auto mm : m.members) dmin = std::min(dmin, t.d[mm]);
                j["min_d"] = dmin;
            }
            std::printf("%s\n", j.dump(2).c_str());
        } else if (*c_som) {
            SieveTable t = sieve.get(som_limit);
            double s = s_of_m(t, som_M, som_limit);
            std::printf("M,S\n%d,%.12g\n", som_M, s);
        } else if (*c_vfy) {
            ConstructionReport rep = verify_construction(v_trials, v_seed);
            std::printf("{\"trials\": %d, \"passes\": %d}\n", rep.trials, rep.passes);
            for (const auto& f : rep.failures)
                std::fprintf(stderr, "trial %d: %s\n", f.trial, f.what.c_str());
            return rep.passes == rep.trials ? 0 : 1;
        } else if (*c_hunt) {
            hc.kind = parse_kind(h_case);
            hc.N = h_N;
            if (h_lambda != "auto") hc.lambda_param = std::stod(h_lambda);
            hc.method = (h_method == "lattice") ? HuntConfig::Method::lattice
                                                : HuntConfig::Method::scan;
            std::vector<int> ks;
            if (hc.kind.tag == ErrKind::Tag::piltz && hc.kind.k >= 3) ks.push_back(hc.kind.k);
            std::uint32_t lim = err_limit ? err_limit : hunt_sieve_limit(hc);
            SieveTable t = sieve.get(lim, ks);
            if (*c_base) {
                BaselineSummary b = baseline_random(hc, t, b_samples);
                json j;
                j["samples"] = b.samples;
                j["window"] = {b.lo, b.hi};
                j["median"] = b.median;
                j["p90"] = b.p90;
                j["p99"] = b.p99;
                j["max"] = b.max;
                std::printf("%s\n", j.dump(2).c_str());
            } else {
                HuntRecord r = hunt(hc, t);
                std::printf("%s\n", record_to_json(r).dump().c_str());
                if (!invariants_hold(r)) {
                    std::fprintf(stderr, "certification invariant failed\n");
                    return 1;
                }
            }
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
