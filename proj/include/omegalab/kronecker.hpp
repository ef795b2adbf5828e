#pragma once
#include <vector>

#include "omegalab/common.hpp"

namespace omegalab {

// Kronecker symbol (d/n) for n >= 1, by binary Jacobi reduction plus the
// 2-adic supplement. No factorization of n.
int kronecker(i64 d, u64 n);

// Period-|d| lookup table, valid for d = 0, 1 (mod 4): table[n % |d|] = (d/n).
std::vector<i8> kronecker_period_table(i64 d);

}  // namespace omegalab
