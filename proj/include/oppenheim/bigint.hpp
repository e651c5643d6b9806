// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace oppenheim {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline int sign_of(const BigInt& x) { return x.sign(); }
inline int sign_of(const BigRat& x) { return x.sign(); }

// Number of bits of |x|; 0 for x == 0.
inline std::int64_t bit_length(const BigInt& x) {
    if (x.is_zero()) return 0;
    return static_cast<std::int64_t>(boost::multiprecision::msb(boost::multiprecision::abs(x))) + 1;
}

inline BigInt abs_int(const BigInt& x) { return boost::multiprecision::abs(x); }

// floor(sqrt(x)), x >= 0.
inline BigInt isqrt_floor(const BigInt& x) {
    return boost::multiprecision::sqrt(x);
}

inline bool is_perfect_square(const BigInt& x, BigInt* root = nullptr) {
    if (x.sign() < 0) return false;
    BigInt r = isqrt_floor(x);
    bool ok = (r * r == x);
    if (ok && root) *root = r;
    return ok;
}

// floor(x^(1/k)) for x >= 0, k >= 1, by bisection on bit length.
inline BigInt iroot_floor(const BigInt& x, unsigned k) {
    if (k == 1 || x.is_zero()) return x;
    if (k == 2) return isqrt_floor(x);
    BigInt lo = 0, hi = BigInt(1) << (bit_length(x) / k + 1);
    while (lo < hi) {
        BigInt mid = (lo + hi + 1) >> 1;
        if (boost::multiprecision::pow(mid, k) <= x)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

inline BigInt pow_int(const BigInt& base, unsigned e) {
    return boost::multiprecision::pow(base, e);
}

// ceil(x^(a/b)) for x >= 1 and a, b >= 1, exactly: the least m with m^b >= x^a.
inline BigInt ceil_pow_ratio(const BigInt& x, unsigned a, unsigned b) {
    BigInt t = pow_int(x, a);
    BigInt r = iroot_floor(t, b);
    if (pow_int(r, b) == t) return r;
    return r + 1;
}

// Floor division that always rounds toward -infinity.
inline BigInt floor_div(const BigInt& num, const BigInt& den) {
    BigInt q = num / den, r = num % den;
    if (!r.is_zero() && ((r.sign() < 0) != (den.sign() < 0))) --q;
    return q;
}

inline BigInt ceil_div(const BigInt& num, const BigInt& den) {
    BigInt q = num / den, r = num % den;
    if (!r.is_zero() && ((r.sign() < 0) == (den.sign() < 0))) ++q;
    return q;
}

inline BigInt gcd_int(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
inline BigInt lcm_int(const BigInt& a, const BigInt& b) { return boost::multiprecision::lcm(a, b); }

inline BigInt numer(const BigRat& q) { return boost::multiprecision::numerator(q); }
inline BigInt denom(const BigRat& q) { return boost::multiprecision::denominator(q); }

inline std::string to_string(const BigInt& x) { return x.str(); }

// log2(x) to double accuracy (x > 0); diagnostics only.
inline double log2_approx(const BigInt& x) {
    std::int64_t bl = bit_length(x);
    std::int64_t drop = bl > 62 ? bl - 62 : 0;
    BigInt top = x >> static_cast<unsigned>(drop);
    return std::log2(static_cast<double>(top.convert_to<std::uint64_t>())) + static_cast<double>(drop);
}

// "p/q" with q omitted when 1; matches the exact-rational strings in JSON output.
inline std::string to_string(const BigRat& x) {
    if (denom(x) == 1) return numer(x).str();
    return numer(x).str() + "/" + denom(x).str();
}

}  // namespace oppenheim
