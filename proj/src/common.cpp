#include "omegalab/common.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace omegalab {

u64 parse_scaled_u64(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty numeric argument");
    bool plain = true;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) { plain = false; break; }
    if (plain) {
        errno = 0;
        char* end = nullptr;
        unsigned long long v = std::strtoull(s.c_str(), &end, 10);
        if (errno != 0 || end == s.c_str() || *end != '\0')
            throw std::invalid_argument("bad integer: " + s);
        return static_cast<u64>(v);
    }
    // scientific / decimal form, must land on an exact non-negative integer
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (errno != 0 || end == s.c_str() || *end != '\0' || !std::isfinite(v) || v < 0)
        throw std::invalid_argument("bad numeric argument: " + s);
    if (v > 1.8e19) throw std::invalid_argument("value out of range: " + s);
    double r = std::round(v);
    if (std::abs(v - r) > 1e-6 * std::max(1.0, std::abs(v)))
        throw std::invalid_argument("not an integer: " + s);
    return static_cast<u64>(r);
}

std::string double_to_hex(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

double hex_to_double(const std::string& s) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw std::invalid_argument("bad hex float: " + s);
    return v;
}

std::string sha256_hex(const std::string& payload) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(payload.data(), payload.size(), digest, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failure");
    static const char* hexd = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hexd[digest[i] >> 4]);
        out.push_back(hexd[digest[i] & 0xf]);
    }
    return out;
}

cplx root_of_unity(i64 num, i64 den) {
    if (den <= 0) throw std::invalid_argument("root_of_unity: den must be positive");
    num %= den;
    if (num < 0) num += den;
    if ((4 * num) % den == 0) {
        switch ((4 * num / den) & 3) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    double ang = 2.0 * M_PI * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(ang), std::sin(ang)};
}

}  // namespace omegalab
