#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

namespace g2uds {

using Int = boost::multiprecision::cpp_int;

inline Int mod_reduce(Int a, const Int& m) {
    a %= m;
    if (a < 0) a += m;
    return a;
}

inline Int mod_pow(Int base, Int exp, const Int& m) {
    base = mod_reduce(base, m);
    Int r = 1;
    while (exp > 0) {
        if (bit_test(exp, 0)) r = r * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return r;
}

// Inverse mod m via extended Euclid; m need not be prime but gcd(a, m) must be 1.
inline Int mod_inv(const Int& a, const Int& m) {
    Int r0 = m, r1 = mod_reduce(a, m), t0 = 0, t1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    return mod_reduce(t0, m);
}

inline Int int_pow(const Int& base, unsigned e) {
    Int r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

inline std::size_t byte_width(const Int& p) {
    std::size_t bits = msb(p) + 1;
    return (bits + 7) / 8;
}

inline void int_to_bytes(const Int& v, std::size_t width, std::vector<std::uint8_t>& out) {
    std::vector<std::uint8_t> tmp(width, 0);
    Int x = v;
    for (std::size_t i = width; i-- > 0 && x > 0;) {
        tmp[i] = static_cast<std::uint8_t>(x & 0xff);
        x >>= 8;
    }
    out.insert(out.end(), tmp.begin(), tmp.end());
}

inline Int int_from_bytes(const std::uint8_t* data, std::size_t width) {
    Int x = 0;
    for (std::size_t i = 0; i < width; ++i) x = (x << 8) | data[i];
    return x;
}

} // namespace g2uds
