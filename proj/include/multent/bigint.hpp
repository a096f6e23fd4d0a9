#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>

namespace multent {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(const BigInt& base, unsigned long long exp) {
    BigInt r = 1, b = base;
    while (exp) {
        if (exp & 1ull) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

// Natural log of a positive integer. Keeps the top 53 bits, so the absolute
// error is below 3e-16 regardless of magnitude.
inline double log_big(const BigInt& v) {
    if (v <= 0) throw std::domain_error("log_big: nonpositive value");
    const auto bits = boost::multiprecision::msb(v); // floor(log2 v)
    if (bits <= 52) return std::log(v.convert_to<double>());
    const BigInt top = v >> (bits - 52);
    return std::log(top.convert_to<double>()) + double(bits - 52) * std::log(2.0);
}

inline std::string to_string(const BigInt& v) { return v.str(); }

} // namespace multent
