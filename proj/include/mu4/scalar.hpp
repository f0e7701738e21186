#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <random>
#include <stdexcept>
#include <string>

#include "field.hpp"

namespace mu4 {

using Scalar = boost::multiprecision::cpp_int;

inline Scalar parse_scalar_hex(const std::string& text) {
    std::string h = strip_hex_prefix(text);
    if (h.empty()) throw std::invalid_argument("empty scalar");
    Scalar k = 0;
    for (char ch : h) k = k * 16 + hex_digit(ch);
    return k;
}

inline std::string scalar_hex(const Scalar& k) {
    if (k < 0) throw std::invalid_argument("negative scalar");
    if (k == 0) return "0";
    static const char* digits = "0123456789abcdef";
    std::string s;
    Scalar t = k;
    while (t > 0) {
        s.push_back(digits[static_cast<unsigned>(t & 15)]);
        t >>= 4;
    }
    return std::string(s.rbegin(), s.rend());
}

inline int scalar_bits(const Scalar& k) { return k == 0 ? 0 : int(boost::multiprecision::msb(k)) + 1; }
inline bool scalar_bit(const Scalar& k, int i) { return boost::multiprecision::bit_test(k, unsigned(i)); }

// Uniform in [0, n) by rejection on raw 64-bit words; deterministic for a given engine state.
inline Scalar random_below(const Scalar& n, std::mt19937_64& rng) {
    if (n <= 0) throw std::invalid_argument("empty range");
    int bits = scalar_bits(n);
    for (;;) {
        Scalar k = 0;
        for (int got = 0; got < bits; got += 64) k = (k << 64) | Scalar(rng());
        k &= (Scalar(1) << bits) - 1;
        if (k < n) return k;
    }
}

}  // namespace mu4
