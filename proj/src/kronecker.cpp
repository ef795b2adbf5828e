#include "omegalab/kronecker.hpp"

#include <cstdlib>
#include <utility>

namespace omegalab {

int kronecker(i64 d, u64 n) {
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    int result = 1;

    // strip factors of two from n via (d/2)
    int twos = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++twos;
    }
    if (twos > 0) {
        if ((d & 1) == 0) return 0;
        int r8 = static_cast<int>(((d % 8) + 8) % 8);
        int s2 = (r8 == 1 || r8 == 7) ? 1 : -1;
        if (twos & 1) result *= s2;
    }

    // Jacobi symbol (d/n) with n odd
    i64 r = d % static_cast<i64>(n);
    if (r < 0) r += static_cast<i64>(n);
    u64 a = static_cast<u64>(r);
    u64 m = n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            u64 m8 = m & 7;
            if (m8 == 3 || m8 == 5) result = -result;
        }
        std::swap(a, m);
        if ((a & 3) == 3 && (m & 3) == 3) result = -result;
        a %= m;
    }
    return (m == 1) ? result : 0;
}

std::vector<i8> kronecker_period_table(i64 d) {
    i64 ad = std::llabs(d);
    i64 m4 = ((d % 4) + 4) % 4;
    if (ad == 0 || (m4 != 0 && m4 != 1))
        throw std::invalid_argument("kronecker_period_table: d must be 0 or 1 (mod 4)");
    std::vector<i8> table(static_cast<std::size_t>(ad));
    for (i64 r = 0; r < ad; ++r)
        table[static_cast<std::size_t>(r)] =
            static_cast<i8>(kronecker(d, r == 0 ? static_cast<u64>(ad) : static_cast<u64>(r)));
    return table;
}

}  // namespace omegalab
