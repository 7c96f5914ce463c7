#include "errhunt/arith.hpp"
#include "errhunt/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace errhunt {

namespace {

// gamma_0..gamma_10, 30 significant digits (matches data/stieltjes.txt).
const long double kGamma[kStieltjesCount] = {
    0.577215664901532860606512090082L,
    -0.0728158454836767248605863758749L,
    -0.00969036319287231848453038603521L,
    0.00205383442030334586616004654275L,
    0.00232537006546730005746817017753L,
    0.000793323817301062701753334877444L,
    -0.000238769345430199609872421841908L,
    -0.000527289567057751046074097505479L,
    -0.000352123353803039509602052165001L,
    -0.0000343947744180880481779146237982L,
    0.000205332814909064794683722289237L,
};

const double kGammaD[kStieltjesCount] = {
    double(kGamma[0]), double(kGamma[1]), double(kGamma[2]),  double(kGamma[3]),
    double(kGamma[4]), double(kGamma[5]), double(kGamma[6]),  double(kGamma[7]),
    double(kGamma[8]), double(kGamma[9]), double(kGamma[10]),
};

using u64 = std::uint64_t;
using u32 = std::uint32_t;

constexpr u64 kBlock = 1u << 20; // elements per parallel sieve block

u64 isqrt(u64 n) {
    u64 r = u64(std::sqrt(double(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

int chi4(u64 v) { return (v & 1) ? (((v & 3) == 1) ? 1 : -1) : 0; }

// --- divisor counts ------------------------------------------------------
// d(m) = 2 * #{a | m : a*a < m} + [m is a square]; only divisors up to
// sqrt are walked, which halves the harmonic sum and keeps every write
// inside the current block.

void sieve_d_block(std::vector<u32>& d, u64 lo, u64 hi) {
    for (u64 a = 1; a * a <= hi; ++a) {
        u64 m = std::max(a * a, ((lo + a - 1) / a) * a);
        for (; m <= hi; m += a) d[m] += 2;
    }
    for (u64 s = isqrt(lo - 1) + 1; s * s <= hi; ++s) d[s * s] -= 1;
}

void sieve_d(std::vector<u32>& d, u64 n, bool parallel) {
    if (!parallel) {
        // reference: one increment per (divisor, multiple) pair
        for (u64 a = 1; a <= n; ++a)
            for (u64 m = a; m <= n; m += a) d[m] += 1;
        return;
    }
    const std::int64_t nblocks = std::int64_t((n + kBlock - 1) / kBlock);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = 0; b < nblocks; ++b) {
        u64 lo = u64(b) * kBlock + 1;
        u64 hi = std::min(n, lo + kBlock - 1);
        sieve_d_block(d, lo, hi);
    }
}

// --- sums of two squares -------------------------------------------------
// r(m) = 4 * sum_{a | m} chi4(a) with chi4 the nonprincipal character mod 4
// (zero on evens).  Blocked form walks unordered divisor pairs (a, b),
// a <= b, adding chi4(a) + chi4(b) once per pair.  Intermediate sums can dip
// below zero; unsigned wraparound is exact and the final value is >= 0.

void sieve_r_block(std::vector<u32>& r, u64 lo, u64 hi) {
    for (u64 a = 1; a * a <= hi; ++a) {
        const int ca = chi4(a);
        u64 b = std::max(a, (lo + a - 1) / a);
        for (; a * b <= hi; ++b) {
            int c = (b == a) ? ca : ca + chi4(b);
            r[a * b] += u32(std::int32_t(4 * c));
        }
    }
}

void sieve_r(std::vector<u32>& r, u64 n, bool parallel) {
    if (!parallel) {
        for (u64 a = 1; a <= n; a += 2) {
            const u32 s = ((a & 3) == 1) ? 4u : u32(std::int32_t(-4));
            for (u64 m = a; m <= n; m += a) r[m] += s;
        }
        return;
    }
    const std::int64_t nblocks = std::int64_t((n + kBlock - 1) / kBlock);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = 0; b < nblocks; ++b) {
        u64 lo = u64(b) * kBlock + 1;
        u64 hi = std::min(n, lo + kBlock - 1);
        sieve_r_block(r, lo, hi);
    }
}

// --- distinct prime factors / "all factors 1 mod 4" ----------------------

std::vector<u32> prime_list(u64 n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<u32> primes;
    for (u64 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        primes.push_back(u32(i));
        for (u64 j = i * i; j <= n; j += i) comp[j] = true;
    }
    return primes;
}

void sieve_omega_parallel(std::vector<std::uint8_t>& omega, std::vector<std::uint8_t>& p14, u64 n) {
    const std::vector<u32> primes = prime_list(n);
    std::fill(p14.begin() + 1, p14.end(), std::uint8_t(1));
    const std::int64_t nblocks = std::int64_t((n + kBlock - 1) / kBlock);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = 0; b < nblocks; ++b) {
        u64 lo = u64(b) * kBlock + 1;
        u64 hi = std::min(n, lo + kBlock - 1);
        for (u32 p : primes) {
            if (p > hi) break;
            u64 m = ((lo + p - 1) / p) * u64(p);
            if ((p & 3) == 1) {
                for (; m <= hi; m += p) omega[m] += 1;
            } else {
                for (; m <= hi; m += p) {
                    omega[m] += 1;
                    p14[m] = 0;
                }
            }
        }
    }
}

void sieve_omega_serial(std::vector<std::uint8_t>& omega, std::vector<std::uint8_t>& p14, u64 n) {
    // smallest-prime-factor table, then strip one full prime power per step
    std::vector<u32> spf(n + 1, 0);
    for (u64 i = 2; i <= n; ++i) {
        if (spf[i]) continue;
        for (u64 j = i; j <= n; j += i)
            if (!spf[j]) spf[j] = u32(i);
    }
    p14[1] = 1;
    for (u64 i = 2; i <= n; ++i) {
        u64 p = spf[i];
        u64 m = i / p;
        while (m % p == 0) m /= p;
        omega[i] = std::uint8_t(omega[m] + 1);
        p14[i] = std::uint8_t(p14[m] && ((p & 3) == 1));
    }
}

// --- k-fold divisor counts ----------------------------------------------
// One Dirichlet convolution with the all-ones sequence per level:
// next(m) = sum_{a | m} prev(a).  The blocked form splits divisors at
// sqrt(n): small divisors are walked directly, large ones through their
// cofactor, so writes never leave the block.  Accumulation is 64-bit; the
// narrowing to u32 is where overflow is detected.

void conv_ones_block(const std::vector<u32>& prev, std::vector<u64>& next, u64 n, u64 lo, u64 hi) {
    const u64 split = isqrt(n);
    for (u64 a = 1; a <= std::min(split, hi); ++a) {
        u64 m = ((lo + a - 1) / a) * a;
        for (; m <= hi; m += a) next[m] += prev[a];
    }
    for (u64 b = 1; b <= hi / (split + 1); ++b) {
        u64 a = std::max(split + 1, (lo + b - 1) / b);
        for (; a * b <= hi; ++a) next[a * b] += prev[a];
    }
}

void conv_ones(const std::vector<u32>& prev, std::vector<u64>& next, u64 n, bool parallel) {
    std::fill(next.begin(), next.end(), u64(0));
    if (!parallel) {
        for (u64 a = 1; a <= n; ++a)
            for (u64 m = a; m <= n; m += a) next[m] += prev[a];
        return;
    }
    const std::int64_t nblocks = std::int64_t((n + kBlock - 1) / kBlock);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = 0; b < nblocks; ++b) {
        u64 lo = u64(b) * kBlock + 1;
        u64 hi = std::min(n, lo + kBlock - 1);
        conv_ones_block(prev, next, n, lo, hi);
    }
}

std::vector<std::int64_t> prefix_sum(const std::vector<u32>& v) {
    std::vector<std::int64_t> s(v.size());
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        acc += v[i];
        s[i] = acc;
    }
    return s;
}

SieveTable build_impl(u32 limit, const std::vector<int>& piltz_ks, const SieveOptions& opt,
                      bool parallel) {
    if (limit == 0) throw std::invalid_argument("build_sieve: limit must be >= 1");
    std::vector<int> ks = piltz_ks;
    std::sort(ks.begin(), ks.end());
    if (std::adjacent_find(ks.begin(), ks.end()) != ks.end())
        throw std::invalid_argument("build_sieve: duplicate k in piltz_ks");
    for (int k : ks)
        if (k < 3 || k > 10)
            throw std::invalid_argument("build_sieve: piltz k must be in [3,10], got " +
                                        std::to_string(k));

    const u64 need = sieve_memory_estimate(limit, ks);
    if (need > opt.memory_cap_bytes) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "build_sieve: limit %u needs ~%.2f GiB, cap is %.2f GiB",
                      limit, double(need) / (1ull << 30),
                      double(opt.memory_cap_bytes) / (1ull << 30));
        throw resource_limit_error(buf);
    }

    const u64 n = limit;
    SieveTable t;
    t.limit = limit;
    t.d.assign(n + 1, 0);
    t.r.assign(n + 1, 0);
    t.omega.assign(n + 1, 0);
    t.p1mod4.assign(n + 1, 0);

    sieve_d(t.d, n, parallel);
    sieve_r(t.r, n, parallel);
    if (parallel)
        sieve_omega_parallel(t.omega, t.p1mod4, n);
    else
        sieve_omega_serial(t.omega, t.p1mod4, n);

    if (!ks.empty()) {
        std::vector<u64> next(n + 1);
        std::vector<u32> prev = t.d; // level 2
        const int kmax = ks.back();
        for (int level = 3; level <= kmax; ++level) {
            conv_ones(prev, next, n, parallel);
            for (u64 i = 1; i <= n; ++i) {
                if (next[i] > std::numeric_limits<u32>::max())
                    throw std::overflow_error("build_sieve: d_" + std::to_string(level) + "(" +
                                              std::to_string(i) + ") exceeds 32 bits");
                prev[i] = u32(next[i]);
            }
            if (std::binary_search(ks.begin(), ks.end(), level)) t.dk[level] = prev;
        }
    }

    t.d_sum = prefix_sum(t.d);
    t.r_sum = prefix_sum(t.r);
    for (auto& [k, v] : t.dk) t.dk_sum[k] = prefix_sum(v);
    return t;
}

} // namespace

std::uint64_t sieve_memory_estimate(std::uint32_t limit, const std::vector<int>& piltz_ks) {
    const u64 n = u64(limit) + 1;
    u64 bytes = n * (4 + 4 + 1 + 1 + 8 + 8); // d, r, omega, p1mod4 and two prefix arrays
    bytes += n * 4;                          // sieve scratch (spf table / prime list)
    if (!piltz_ks.empty()) bytes += n * 12;  // convolution accumulator + rolling level
    bytes += u64(piltz_ks.size()) * n * 12;  // stored d_k and its prefix
    return bytes;
}

SieveTable build_sieve(std::uint32_t limit, const std::vector<int>& piltz_ks,
                       const SieveOptions& opt) {
    return build_impl(limit, piltz_ks, opt, opt.parallel);
}

SieveTable build_sieve_serial(std::uint32_t limit, const std::vector<int>& piltz_ks,
                              const SieveOptions& opt) {
    return build_impl(limit, piltz_ks, opt, false);
}

namespace {

std::size_t floor_index(const SieveTable& t, double x, const char* who) {
    if (!(x >= 0.0))
        throw std::invalid_argument(std::string(who) + ": x must be >= 0");
    if (x > double(t.limit))
        throw std::out_of_range(std::string(who) + ": x = " + std::to_string(x) +
                                " exceeds table limit " + std::to_string(t.limit));
    return std::size_t(x);
}

} // namespace

std::int64_t summatory_d(const SieveTable& t, double x) {
    return t.d_sum[floor_index(t, x, "summatory_d")];
}

std::int64_t summatory_r(const SieveTable& t, double x) {
    return t.r_sum[floor_index(t, x, "summatory_r")];
}

std::int64_t summatory_dk(const SieveTable& t, int k, double x) {
    if (k == 2) return summatory_d(t, x);
    auto it = t.dk_sum.find(k);
    if (it == t.dk_sum.end())
        throw std::invalid_argument("summatory_dk: table has no d_" + std::to_string(k));
    return it->second[floor_index(t, x, "summatory_dk")];
}

const double* stieltjes_table() { return kGammaD; }

MainTermPoly main_term_poly(int k) {
    if (k < 1 || k > 10)
        throw std::invalid_argument("main_term_poly: k must be in [1,10], got " +
                                    std::to_string(k));
    // A(w) = w * zeta(1+w): a_0 = 1, a_j = (-1)^(j-1) gamma_{j-1} / (j-1)!
    std::vector<long double> a(k, 0.0L);
    a[0] = 1.0L;
    long double fact = 1.0L;
    for (int j = 1; j < k; ++j) {
        if (j >= 2) fact *= (j - 1);
        a[j] = ((j % 2) ? 1.0L : -1.0L) * kGamma[j - 1] / fact;
    }
    // P = A^k truncated at degree k-1
    std::vector<long double> p(k, 0.0L);
    p[0] = 1.0L;
    for (int rep = 0; rep < k; ++rep) {
        std::vector<long double> q(k, 0.0L);
        for (int i = 0; i < k; ++i)
            for (int j = 0; i + j < k; ++j) q[i + j] += p[i] * a[j];
        p = std::move(q);
    }
    // B = P / (1 + w), then c_m = b_{k-1-m} / m!
    std::vector<long double> bcoef(k, 0.0L);
    for (int j = 0; j < k; ++j) bcoef[j] = p[j] - (j ? bcoef[j - 1] : 0.0L);
    MainTermPoly out;
    out.k = k;
    out.coeffs.resize(k);
    long double mfact = 1.0L;
    for (int m = 0; m < k; ++m) {
        if (m >= 2) mfact *= m;
        out.coeffs[m] = double(bcoef[k - 1 - m] / mfact);
    }
    out.stieltjes_used.assign(kGammaD, kGammaD + k);
    return out;
}

double main_term_eval(const MainTermPoly& p, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("main_term_eval: x must be > 0");
    const long double L = std::log((long double)x);
    long double acc = 0.0L;
    for (int m = p.k - 1; m >= 0; --m) acc = acc * L + (long double)p.coeffs[m];
    return double((long double)x * acc);
}

double main_term(int k, double x) { return main_term_eval(main_term_poly(k), x); }

// --- binary cache ---------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'E', 'H', 'S', 'V'};
constexpr u32 kVersion = 1;

struct Writer {
    std::FILE* f;
    void u8(std::uint8_t v) { std::fputc(v, f); }
    void u32le(u32 v) {
        for (int i = 0; i < 4; ++i) std::fputc(int((v >> (8 * i)) & 0xff), f);
    }
    void u64le(u64 v) {
        for (int i = 0; i < 8; ++i) std::fputc(int((v >> (8 * i)) & 0xff), f);
    }
    template <class T> void array(const std::vector<T>& v) {
        if constexpr (std::endian::native == std::endian::little) {
            std::fwrite(v.data(), sizeof(T), v.size(), f);
        } else {
            for (T x : v)
                for (std::size_t i = 0; i < sizeof(T); ++i)
                    std::fputc(int((u64(x) >> (8 * i)) & 0xff), f);
        }
    }
};

struct Reader {
    std::FILE* f;
    bool ok = true;
    std::uint8_t u8() {
        int c = std::fgetc(f);
        if (c == EOF) ok = false;
        return std::uint8_t(c);
    }
    u32 u32le() {
        u32 v = 0;
        for (int i = 0; i < 4; ++i) v |= u32(u8()) << (8 * i);
        return v;
    }
    u64 u64le() {
        u64 v = 0;
        for (int i = 0; i < 8; ++i) v |= u64(u8()) << (8 * i);
        return v;
    }
    template <class T> void array(std::vector<T>& v, std::size_t count) {
        v.resize(count);
        if constexpr (std::endian::native == std::endian::little) {
            if (std::fread(v.data(), sizeof(T), count, f) != count) ok = false;
        } else {
            for (std::size_t j = 0; j < count; ++j) {
                u64 x = 0;
                for (std::size_t i = 0; i < sizeof(T); ++i) x |= u64(u8()) << (8 * i);
                v[j] = T(x);
            }
        }
    }
};

enum : std::uint8_t { kTagD = 0, kTagR = 1, kTagOmega = 2, kTagP1mod4 = 3, kTagDk = 4 };

} // namespace

void save_sieve(const SieveTable& t, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("save_sieve: cannot open " + path);
    Writer w{f};
    std::fwrite(kMagic, 1, 4, f);
    w.u32le(kVersion);
    w.u64le(t.limit);
    w.u32le(u32(4 + t.dk.size()));
    w.u8(kTagD);
    w.u32le(0);
    w.u8(kTagR);
    w.u32le(0);
    w.u8(kTagOmega);
    w.u32le(0);
    w.u8(kTagP1mod4);
    w.u32le(0);
    for (const auto& [k, v] : t.dk) {
        w.u8(kTagDk);
        w.u32le(u32(k));
    }
    w.array(t.d);
    w.array(t.r);
    w.array(t.omega);
    w.array(t.p1mod4);
    for (const auto& [k, v] : t.dk) w.array(v);
    if (std::fclose(f) != 0) throw std::runtime_error("save_sieve: write failed for " + path);
}

SieveTable load_sieve(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("load_sieve: cannot open " + path);
    Reader r{f};
    char magic[4];
    if (std::fread(magic, 1, 4, f) != 4 || std::memcmp(magic, kMagic, 4) != 0) {
        std::fclose(f);
        throw std::runtime_error("load_sieve: bad magic in " + path);
    }
    const u32 ver = r.u32le();
    if (ver != kVersion) {
        std::fclose(f);
        throw std::runtime_error("load_sieve: unsupported version " + std::to_string(ver));
    }
    const u64 limit = r.u64le();
    if (limit == 0 || limit > 0xffffffffull) {
        std::fclose(f);
        throw std::runtime_error("load_sieve: bad limit field");
    }
    const u32 nent = r.u32le();
    std::vector<std::pair<std::uint8_t, u32>> entries(nent);
    for (auto& e : entries) {
        e.first = r.u8();
        e.second = r.u32le();
    }
    SieveTable t;
    t.limit = u32(limit);
    const std::size_t count = std::size_t(limit) + 1;
    for (auto& [tag, k] : entries) {
        switch (tag) {
        case kTagD: r.array(t.d, count); break;
        case kTagR: r.array(t.r, count); break;
        case kTagOmega: r.array(t.omega, count); break;
        case kTagP1mod4: r.array(t.p1mod4, count); break;
        case kTagDk: {
            std::vector<u32> v;
            r.array(v, count);
            t.dk[int(k)] = std::move(v);
            break;
        }
        default:
            std::fclose(f);
            throw std::runtime_error("load_sieve: unknown entry tag in " + path);
        }
    }
    std::fclose(f);
    if (!r.ok) throw std::runtime_error("load_sieve: truncated file " + path);
    if (t.d.empty() || t.r.empty() || t.omega.empty() || t.p1mod4.empty())
        throw std::runtime_error("load_sieve: missing required arrays in " + path);
    t.d_sum = prefix_sum(t.d);
    t.r_sum = prefix_sum(t.r);
    for (auto& [k, v] : t.dk) t.dk_sum[k] = prefix_sum(v);
    return t;
}

} // namespace errhunt
