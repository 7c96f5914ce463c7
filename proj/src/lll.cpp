#include "errhunt/lll.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>

namespace errhunt {

namespace {

constexpr std::size_t kSwapCap = 1000000;

mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_shape(const LatticeBasis& basis) {
    if (basis.empty() || basis[0].empty())
        throw std::invalid_argument("lattice basis must be non-empty");
    for (const auto& row : basis)
        if (row.size() != basis[0].size())
            throw std::invalid_argument("lattice basis rows must have equal length");
}

} // namespace

void lll_reduce(LatticeBasis& b) {
    check_shape(b);
    const std::size_t n = b.size();
    if (n == 1) return;

    // D[i] = det Gram(b_0..b_{i-1}), D[0] = 1; lam[i][j] = D[j+1] * mu_{i,j}
    // keeps every Gram-Schmidt quantity integral, so each division below is
    // exact.
    std::vector<mpz_class> D(n + 1);
    std::vector<std::vector<mpz_class>> lam(n, std::vector<mpz_class>(n));
    D[0] = 1;
    D[1] = dot(b[0], b[0]);
    if (D[1] == 0) throw std::invalid_argument("lll_reduce: dependent or zero rows");

    mpz_class u, q, t, lbd, B, tmp;

    auto gram_row = [&](std::size_t k) {
        for (std::size_t j = 0; j <= k; ++j) {
            u = dot(b[k], b[j]);
            for (std::size_t i = 0; i < j; ++i) {
                u = D[i + 1] * u - lam[k][i] * lam[j][i];
                mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), D[i].get_mpz_t());
            }
            if (j < k) {
                lam[k][j] = u;
            } else {
                if (u == 0) throw std::invalid_argument("lll_reduce: dependent rows");
                D[k + 1] = u;
            }
        }
    };

    auto redi = [&](std::size_t k, std::size_t l) {
        tmp = 2 * lam[k][l];
        if (mpz_cmpabs(tmp.get_mpz_t(), D[l + 1].get_mpz_t()) <= 0) return;
        // q = nearest integer to lam[k][l] / D[l+1]
        tmp += D[l + 1];
        t = 2 * D[l + 1];
        mpz_fdiv_q(q.get_mpz_t(), tmp.get_mpz_t(), t.get_mpz_t());
        for (std::size_t i = 0; i < b[k].size(); ++i) b[k][i] -= q * b[l][i];
        lam[k][l] -= q * D[l + 1];
        for (std::size_t i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
    };

    std::size_t swaps = 0;
    std::size_t k = 1, kmax = 0;
    while (k < n) {
        if (k > kmax) {
            kmax = k;
            gram_row(k);
        }
        redi(k, k - 1);
        lbd = lam[k][k - 1];
        B = 3 * D[k] * D[k] - 4 * lbd * lbd;
        tmp = 4 * D[k + 1] * D[k - 1];
        if (tmp < B) {
            if (++swaps > kSwapCap)
                throw std::runtime_error("lll_reduce: swap cap exceeded; input badly conditioned");
            std::swap(b[k], b[k - 1]);
            for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
            B = D[k - 1] * D[k + 1] + lbd * lbd;
            mpz_divexact(B.get_mpz_t(), B.get_mpz_t(), D[k].get_mpz_t());
            for (std::size_t i = k + 1; i <= kmax; ++i) {
                t = lam[i][k];
                lam[i][k] = D[k + 1] * lam[i][k - 1] - lbd * t;
                mpz_divexact(lam[i][k].get_mpz_t(), lam[i][k].get_mpz_t(), D[k].get_mpz_t());
                lam[i][k - 1] = B * t + lbd * lam[i][k];
                mpz_divexact(lam[i][k - 1].get_mpz_t(), lam[i][k - 1].get_mpz_t(),
                             D[k + 1].get_mpz_t());
            }
            D[k] = B;
            k = (k >= 2) ? k - 1 : 1;
        } else {
            for (std::size_t l = k - 1; l-- > 0;) redi(k, l);
            ++k;
        }
    }
}

mpz_class gram_det(const LatticeBasis& basis) {
    check_shape(basis);
    const std::size_t n = basis.size();
    std::vector<std::vector<mpz_class>> g(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            g[i][j] = dot(basis[i], basis[j]);
            if (j != i) g[j][i] = g[i][j];
        }
    // Bareiss; the Gram matrix is positive semidefinite, so a zero pivot
    // means a singular leading block and hence determinant zero.
    mpz_class prev = 1;
    for (std::size_t p = 0; p + 1 < n; ++p) {
        if (g[p][p] == 0) return 0;
        for (std::size_t i = p + 1; i < n; ++i)
            for (std::size_t j = p + 1; j < n; ++j) {
                g[i][j] = g[p][p] * g[i][j] - g[i][p] * g[p][j];
                mpz_divexact(g[i][j].get_mpz_t(), g[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = g[p][p];
    }
    return g[n - 1][n - 1];
}

} // namespace errhunt
