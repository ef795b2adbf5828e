#pragma once
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace omegalab {

using u8   = std::uint8_t;
using i8   = std::int8_t;
using u32  = std::uint32_t;
using i32  = std::int32_t;
using u64  = std::uint64_t;
using i64  = std::int64_t;
using i128 = __int128_t;
using cplx = std::complex<double>;

// Neumaier-compensated accumulator. `sum` and `comp` are serialized
// separately so checkpoints round-trip bit-exactly.
struct Kahan {
    double sum  = 0.0;
    double comp = 0.0;

    void add(double t) {
        double s = sum + t;
        if (std::abs(sum) >= std::abs(t))
            comp += (sum - s) + t;
        else
            comp += (t - s) + sum;
        sum = s;
    }

    double value() const { return sum + comp; }
};

struct KahanComplex {
    Kahan re, im;

    void add(cplx v) {
        re.add(v.real());
        im.add(v.imag());
    }

    cplx value() const { return {re.value(), im.value()}; }
};

// floor(sqrt(n)) exact for all u64
inline u64 isqrt_u64(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n && (r + 1) != 0) ++r;
    return r;
}

// Accepts plain decimal ("17593752") or scientific ("1e8", "2.5e7") forms.
u64 parse_scaled_u64(const std::string& s);

// Lossless text round trip for doubles (printf %a form).
std::string double_to_hex(double v);
double hex_to_double(const std::string& s);

std::string sha256_hex(const std::string& payload);

// e^{2*pi*i*num/den}; values at quadrant angles are snapped exactly to
// {1, i, -1, -i} so that e.g. m=2 collapses to real arithmetic with no
// residual imaginary part.
cplx root_of_unity(i64 num, i64 den);

}  // namespace omegalab
