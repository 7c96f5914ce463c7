// Timing harness: parallel kernels against their serial reference
// implementations, verifying bit-identical results while reporting speedup.

#include "errhunt/arith.hpp"
#include "errhunt/dioph.hpp"
#include "errhunt/series.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include <omp.h>

using namespace errhunt;

namespace {

double seconds(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void row(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-22s %10.3fs %10.3fs   x%.2f   %s\n", name, serial, parallel,
                serial / parallel, identical ? "bit-identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    std::uint32_t limit = argc > 1 ? std::uint32_t(std::atoi(argv[1])) : 2000000;
    std::printf("threads: %d   sieve limit: %u\n\n", omp_get_max_threads(), limit);
    std::printf("%-22s %11s %11s  %7s\n", "kernel", "serial", "parallel", "speedup");

    SieveTable ts, tp;
    double b_ser = seconds([&] { ts = build_sieve_serial(limit); });
    double b_par = seconds([&] { tp = build_sieve(limit); });
    row("build_sieve", b_ser, b_par,
        ts.d == tp.d && ts.r == tp.r && ts.omega == tp.omega && ts.d_sum == tp.d_sum);

    ResonanceSeries s = divisor_series(tp, std::min<std::uint32_t>(limit, 100000));
    const int reps = 400;
    std::vector<double> vs(reps), vp(reps);
    double e_ser = seconds([&] {
        for (int i = 0; i < reps; ++i) vs[i] = eval_series_serial(s, dd{100.0 + 0.37 * i});
    });
    double e_par = seconds([&] {
        for (int i = 0; i < reps; ++i) vp[i] = eval_series(s, dd{100.0 + 0.37 * i});
    });
    row("eval_series", e_ser, e_par, vs == vp);

    ApproxTarget target = make_target(
        {sqrt_dd(2.0) * 2.0, sqrt_dd(3.0) * 2.0, sqrt_dd(5.0) * 2.0}, 4, 2.0);
    SearchDiagnostics ds, dp;
    std::optional<ApproxSolution> rs, rp;
    double s_ser = seconds([&] { rs = scan_search_serial(target, 0.0, kDefaultScanBudget, &ds); });
    double s_par = seconds([&] { rp = scan_search(target, 0.0, kDefaultScanBudget, &dp); });
    bool same = rs.has_value() == rp.has_value() && ds.points_examined == dp.points_examined &&
                (!rs || (rs->grid_index == rp->grid_index && rs->achieved == rp->achieved));
    row("scan_search", s_ser, s_par, same);
    return 0;
}
