#pragma once

#include <cstddef>
#include <vector>

// Deterministic reduction helpers.  Parallel kernels accumulate into
// fixed-size blocks (serial, in index order within each block) and combine
// the per-block partials with a pairwise tree.  The result is a fixed
// arithmetic expression independent of thread count, so the OpenMP kernels
// are bit-identical to their serial references.

namespace errhunt {

inline constexpr std::size_t kEvalBlock = 4096;

inline double pairwise_sum(const double* v, std::size_t n) {
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = v[0];
        for (std::size_t i = 1; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(v.data(), v.size());
}

} // namespace errhunt
