#pragma once

#include "errhunt/dd.hpp"
#include "errhunt/errors.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace errhunt {

// Simultaneous approximation target: find x in [X, bound] with
// ||freqs[m] * x|| <= quality for every m, where ||.|| is the distance to
// the nearest integer.
struct ApproxTarget {
    std::vector<dd> freqs;  // positive, pairwise distinct
    int L = 2;
    double quality = 1.0 / 12.0;  // 1/(6L)
    double X = 1.0;               // smallest admissible x
    double bound = 0.0;           // (6L)^M * X; pigeonhole guarantees a hit by here
};

ApproxTarget make_target(std::vector<dd> freqs, int L, double X);

struct ApproxSolution {
    dd x0;                  // = grid_index * grid_step exactly
    double achieved = 0.0;  // max_m ||freqs[m] * x0||
    enum class Method { scan, lattice } method = Method::scan;
    bool certified = false;  // achieved <= quality
    bool in_range = false;   // X <= x0 <= bound
    std::int64_t grid_index = 0;
    double grid_step = 0.0;
};

struct SearchDiagnostics {
    std::uint64_t points_examined = 0;
    bool truncated = false;  // stopped by budget, not by range end
    double best_x = 0.0;     // best near-miss among examined points
    double best_achieved = std::numeric_limits<double>::infinity();
};

inline constexpr std::uint64_t kDefaultScanBudget = 1000000000;

// Distance from lambda*x to the nearest integer in double-double phase
// arithmetic.  |lambda*x| must stay below 1e14 or the fractional part is
// left with too few significant bits (precision_loss_error).
double frac_dist(dd lambda, dd x);

// (6L)^M * X, the upper end of the range that pigeonhole guarantees to
// contain a simultaneous approximation of quality 1/(6L) for M frequencies.
// Throws std::overflow_error if not finite.
double dirichlet_range(int M, int L, double X);

// Default grid spacing quality/(4 pi lambda_max): fine enough that no
// ||lambda x|| <= quality window can fall between adjacent grid points.
double default_scan_step(const ApproxTarget& t);

// Grid scan over [X, bound].  Returns the solution at the smallest grid
// point j*step >= X meeting every constraint, or nullopt when no grid point
// in range qualifies.  step = 0 picks the default; any explicit step must
// satisfy step <= quality/(2 pi lambda_max) or the scan could step over a
// solution window (std::invalid_argument).  If covering the range needs
// more than `budget` grid points, scan_search throws budget_exceeded_error
// up front with the projected count, while scan_search_capped scans the
// first `budget` points and reports truncation through the diagnostics.
// Results and diagnostics are independent of thread count; the _serial
// variant is the reference for that.
std::optional<ApproxSolution> scan_search(const ApproxTarget& t, double step = 0.0,
                                          std::uint64_t budget = kDefaultScanBudget,
                                          SearchDiagnostics* diag = nullptr);
std::optional<ApproxSolution> scan_search_capped(const ApproxTarget& t, double step = 0.0,
                                                 std::uint64_t budget = kDefaultScanBudget,
                                                 SearchDiagnostics* diag = nullptr);
std::optional<ApproxSolution> scan_search_serial(const ApproxTarget& t, double step = 0.0,
                                                 std::uint64_t budget = kDefaultScanBudget,
                                                 SearchDiagnostics* diag = nullptr);

// Lattice route: reduce an (M+1)-dimensional basis that encodes the
// frequencies at denom_bits fractional bits, read candidate x values off the
// short vectors (plus small integer combinations, and the multiples needed
// to clear X), and certify each against the original quality.  The
// reduction's 2^{M/2} approximation slack is absorbed by tightening the
// internal quality, never by loosening certification.  Requires M <= 12.
// Returns the best certified candidate (in_range = false flags a
// best-effort x0 outside [X, bound]) or nullopt.  Single-threaded; x0 is a
// grid rational like the scan's.
std::optional<ApproxSolution> lattice_search(const ApproxTarget& t, int denom_bits = 96,
                                             SearchDiagnostics* diag = nullptr);

} // namespace errhunt
