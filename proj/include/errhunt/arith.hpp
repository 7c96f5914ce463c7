#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

// Arithmetic tables.  One build pass produces, for all n <= limit:
//   d(n)      number of divisors
//   r(n)      representations as a^2 + b^2 (signed pairs, so r(1) = 4)
//   d_k(n)    k-fold divisor function, for each requested k >= 3
//   omega(n)  number of distinct prime factors
//   p1mod4(n) 1 iff every prime factor of n is congruent to 1 mod 4
// plus int64 prefix sums for the counting functions, so the summatory
// lookups behind the error terms are O(1).

namespace errhunt {

struct SieveOptions {
    bool parallel = true;
    std::uint64_t memory_cap_bytes = 8ull << 30; // refuse builds estimated above this
};

struct SieveTable {
    std::uint32_t limit = 0;

    // index 0 is a zero pad; valid entries are 1..limit
    std::vector<std::uint32_t> d;
    std::vector<std::uint32_t> r;
    std::map<int, std::vector<std::uint32_t>> dk; // k >= 3 only; d_2 is d
    std::vector<std::uint8_t> omega;
    std::vector<std::uint8_t> p1mod4;

    std::vector<std::int64_t> d_sum;
    std::vector<std::int64_t> r_sum;
    std::map<int, std::vector<std::int64_t>> dk_sum;
};

// Estimated allocation for build_sieve, used for the memory-cap check.
std::uint64_t sieve_memory_estimate(std::uint32_t limit, const std::vector<int>& piltz_ks);

// Throws std::invalid_argument for limit == 0 or a bad k (k < 3 or k > 10,
// or duplicates), resource_limit_error when the estimate exceeds the cap,
// std::overflow_error if some d_k value would not fit in 32 bits.
SieveTable build_sieve(std::uint32_t limit, const std::vector<int>& piltz_ks = {},
                       const SieveOptions& opt = {});

// Serial reference; produces bit-identical tables.
SieveTable build_sieve_serial(std::uint32_t limit, const std::vector<int>& piltz_ks = {},
                              const SieveOptions& opt = {});

// Summatory counts: sum over 1 <= n <= floor(x).  Requires 0 <= x <= limit
// (out_of_range above the table, invalid_argument for negative x).
std::int64_t summatory_d(const SieveTable& t, double x);
std::int64_t summatory_r(const SieveTable& t, double x);
std::int64_t summatory_dk(const SieveTable& t, int k, double x); // k = 2 uses d

// --- main terms --------------------------------------------------------
// The smooth part of sum_{n<=x} d_k(n) is x * Q_{k-1}(log x) where Q_{k-1}
// comes from the degree-(k-1) polynomial part of zeta(s)^k x^s / s at s = 1.
// Coefficients are assembled from the Stieltjes constants:
//   zeta(1+w) = 1/w * A(w),  A(w) = 1 + g0 w - g1 w^2 + (g2/2!) w^3 - ...
//   B(w) = A(w)^k / (1+w) truncated at degree k-1,  c_m = b_{k-1-m} / m!.

struct MainTermPoly {
    int k = 0;
    std::vector<double> coeffs;         // c_0..c_{k-1}; value = x * sum c_m (log x)^m
    std::vector<double> stieltjes_used; // gamma_0..gamma_{k-1}
};

inline constexpr int kStieltjesCount = 11;
const double* stieltjes_table(); // gamma_0..gamma_10

MainTermPoly main_term_poly(int k);                     // 1 <= k <= 10
double main_term_eval(const MainTermPoly& p, double x); // x > 0
double main_term(int k, double x);

// --- binary cache -------------------------------------------------------
// Layout: "EHSV" magic, u32 version, u64 limit, u32 entry count, then per
// entry a u8 tag (0=d 1=r 2=omega 3=p1mod4 4=d_k) and u32 k, then the raw
// array payloads in entry order, all little-endian.  Prefix sums are
// recomputed on load rather than stored.
void save_sieve(const SieveTable& t, const std::string& path);
SieveTable load_sieve(const std::string& path); // throws runtime_error on bad file

} // namespace errhunt
