#pragma once

#include <gmpxx.h>

#include <vector>

namespace errhunt {

// Row-major integer lattice basis; rows must be linearly independent.
using LatticeBasis = std::vector<std::vector<mpz_class>>;

// In-place Lenstra-Lenstra-Lovasz reduction with delta = 3/4 in all-integer
// arithmetic (Gram determinant prefixes plus scaled Gram-Schmidt numerators),
// so no precision is lost at any input size.  Throws std::invalid_argument
// on empty/ragged input or dependent rows, std::runtime_error if the swap
// count exceeds an internal safety cap.
void lll_reduce(LatticeBasis& basis);

// Determinant of the Gram matrix basis * basis^T via fraction-free
// elimination, independent of lll_reduce.  Unimodular row operations leave
// it unchanged, which makes it a cheap reduction invariant.
mpz_class gram_det(const LatticeBasis& basis);

} // namespace errhunt
