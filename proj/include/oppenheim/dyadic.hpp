// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "oppenheim/bigint.hpp"

namespace oppenheim {

// Dyadic rational m * 2^e with arbitrary-precision mantissa.
//
// Addition, subtraction and multiplication are exact. Directed rounding
// (round_down / round_up to a mantissa width) plus directed division and
// square root are the primitives interval arithmetic is built on. Values are
// kept canonical: m odd or m == 0 (with e == 0), so operator== is structural.
class Dyadic {
  public:
    Dyadic() : m_(0), e_(0) {}
    Dyadic(long v) : m_(v), e_(0) { normalize(); }                   // NOLINT(google-explicit-constructor)
    Dyadic(const BigInt& mant, std::int64_t exp2) : m_(mant), e_(exp2) { normalize(); }

    static Dyadic pow2(std::int64_t e) { return Dyadic(BigInt(1), e); }

    const BigInt& mantissa() const { return m_; }
    std::int64_t exponent() const { return e_; }
    bool is_zero() const { return m_.is_zero(); }
    int sign() const { return m_.sign(); }

    // ceil(log2 |x|): |x| <= 2^mag, with 2^(mag-1) <= |x|. Undefined for 0.
    std::int64_t mag2() const { return bit_length(m_) + e_; }

    friend Dyadic operator-(const Dyadic& a) { return Dyadic(-a.m_, a.e_, raw_tag{}); }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        std::int64_t e = std::min(a.e_, b.e_);
        return Dyadic((a.m_ << static_cast<unsigned>(a.e_ - e)) + (b.m_ << static_cast<unsigned>(b.e_ - e)), e);
    }
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
        return Dyadic(a.m_ * b.m_, a.e_ + b.e_);
    }

    friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.e_ == b.e_ && a.m_ == b.m_; }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
    friend bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0; }

    // Comparison without materializing huge exponent-aligned mantissas: first
    // separate by sign and magnitude, shift only when the ranges overlap.
    static int cmp(const Dyadic& a, const Dyadic& b) {
        int sa = a.sign(), sb = b.sign();
        if (sa != sb) return sa < sb ? -1 : 1;
        if (sa == 0) return 0;
        std::int64_t ma = a.mag2(), mb = b.mag2();
        if (ma != mb) {
            // |a| < |b| iff ma < mb (the [2^(m-1), 2^m) ranges are disjoint)
            bool abs_less = ma < mb;
            return (abs_less == (sa > 0)) ? -1 : 1;
        }
        std::int64_t e = std::min(a.e_, b.e_);
        BigInt am = a.m_ << static_cast<unsigned>(a.e_ - e);
        BigInt bm = b.m_ << static_cast<unsigned>(b.e_ - e);
        if (am == bm) return 0;
        return am < bm ? -1 : 1;
    }

    Dyadic abs() const { return sign() < 0 ? -*this : *this; }

    // Directed rounding to at most `bits` mantissa bits.
    Dyadic round_down(std::int64_t bits) const { return rounded(bits, /*up=*/false); }
    Dyadic round_up(std::int64_t bits) const { return rounded(bits, /*up=*/true); }

    // a / b rounded in the requested direction, with a quotient mantissa of
    // ~bits significant bits. b != 0.
    static Dyadic div(const Dyadic& a, const Dyadic& b, std::int64_t bits, bool up) {
        if (a.is_zero()) return Dyadic();
        BigInt an = abs_int(a.m_), bn = abs_int(b.m_);
        std::int64_t shift = bits + bit_length(bn) - bit_length(an) + 2;
        if (shift < 0) shift = 0;
        BigInt sn = an << static_cast<unsigned>(shift);
        BigInt q = sn / bn;
        bool exact = (q * bn == sn);
        bool neg = (a.sign() < 0) != (b.sign() < 0);
        // q is the truncation of |a/b| scaled; fix the direction.
        if (!exact && (up != neg)) ++q;
        Dyadic res(neg ? -q : q, a.e_ - b.e_ - shift);
        return up ? res.round_up(bits + 2) : res.round_down(bits + 2);
    }

    // sqrt(x) for x >= 0, rounded in the requested direction, ~bits mantissa bits.
    static Dyadic sqrt(const Dyadic& x, std::int64_t bits, bool up) {
        if (x.is_zero()) return Dyadic();
        BigInt mant = x.m_;
        std::int64_t e = x.e_;
        std::int64_t want = 2 * bits + 4 - bit_length(mant);
        if (want < 0) want = 0;
        if ((want + e) % 2 != 0) ++want;  // keep exponent even
        mant <<= static_cast<unsigned>(want);
        e -= want;
        BigInt r = isqrt_floor(mant);
        bool exact = (r * r == mant);
        if (up && !exact) ++r;
        return Dyadic(r, e / 2);
    }

    // Exact conversion from a rational is impossible in general; round instead.
    static Dyadic from_rational(const BigRat& q, std::int64_t bits, bool up) {
        return div(Dyadic(numer(q), 0), Dyadic(denom(q), 0), bits, up);
    }

    // Exact value as a rational.
    BigRat to_rational() const {
        if (e_ >= 0) return BigRat(m_ << static_cast<unsigned>(e_));
        return BigRat(m_, BigInt(1) << static_cast<unsigned>(-e_));
    }

    BigInt floor() const {
        if (e_ >= 0) return m_ << static_cast<unsigned>(e_);
        BigInt q = abs_int(m_) >> static_cast<unsigned>(-e_);
        if (sign() >= 0) return q;
        // negative: round toward -infinity
        bool exact = ((q << static_cast<unsigned>(-e_)) == abs_int(m_));
        return exact ? BigInt(-q) : BigInt(-q - 1);
    }
    BigInt ceil() const { return -((-*this).floor()); }

    // Decimal rendering, rounded outward in the requested direction so a
    // printed bracket is still an enclosure. `digits` significant digits.
    std::string to_decimal(int digits, bool up) const;

    double to_double() const {
        // Good enough for diagnostics; clamps on overflow.
        if (is_zero()) return 0.0;
        std::int64_t bl = bit_length(m_);
        std::int64_t drop = bl > 62 ? bl - 62 : 0;
        BigInt top = abs_int(m_) >> static_cast<unsigned>(drop);
        double d = static_cast<double>(top.convert_to<std::uint64_t>());
        d = std::ldexp(d, static_cast<int>(e_ + drop));
        return sign() < 0 ? -d : d;
    }

  private:
    struct raw_tag {};
    Dyadic(BigInt mant, std::int64_t exp2, raw_tag) : m_(std::move(mant)), e_(exp2) {}

    void normalize() {
        if (m_.is_zero()) {
            e_ = 0;
            return;
        }
        unsigned tz = boost::multiprecision::lsb(abs_int(m_));
        if (tz > 0) {
            m_ >>= tz;
            e_ += tz;
        }
    }

    Dyadic rounded(std::int64_t bits, bool up) const {
        std::int64_t bl = bit_length(m_);
        if (bl <= bits) return *this;
        std::int64_t drop = bl - bits;
        BigInt q = abs_int(m_) >> static_cast<unsigned>(drop);
        bool neg = sign() < 0;
        bool exact = ((q << static_cast<unsigned>(drop)) == abs_int(m_));
        if (!exact && (up != neg)) ++q;
        return Dyadic(neg ? -q : q, e_ + drop);
    }

    BigInt m_;
    std::int64_t e_;
};

// Exact comparison of a dyadic with a rational: sign of (x - r).
inline int cmp_dyadic_rational(const Dyadic& x, const BigRat& r) {
    int sx = x.sign(), sr = sign_of(r);
    if (sx != sr) return sx < sr ? -1 : 1;
    if (sx == 0) return 0;
    const BigInt& a = numer(r);
    const BigInt& b = denom(r);
    // magnitude shortcut guards against materializing 2^|e| for extreme e
    std::int64_t mx = x.mag2();
    std::int64_t mr_hi = bit_length(a) - bit_length(b) + 1;  // |r| < 2^mr_hi
    std::int64_t mr_lo = bit_length(a) - bit_length(b) - 1;  // |r| >= 2^mr_lo
    if (mx <= mr_lo) return sx > 0 ? -1 : 1;
    if (mx - 1 >= mr_hi) return sx > 0 ? 1 : -1;
    BigInt lhs, rhs;
    if (x.exponent() >= 0) {
        lhs = x.mantissa() * b << static_cast<unsigned>(x.exponent());
        rhs = a;
    } else {
        lhs = x.mantissa() * b;
        rhs = a << static_cast<unsigned>(-x.exponent());
    }
    if (lhs == rhs) return 0;
    return lhs < rhs ? -1 : 1;
}

inline std::string Dyadic::to_decimal(int digits, bool up) const {
    if (is_zero()) return "0";
    if (mag2() > 1000000 || mag2() < -1000000) {
        // Exact but non-decimal rendering for extreme magnitudes.
        return m_.str() + "*2^" + std::to_string(e_);
    }
    bool neg = sign() < 0;
    // Scale |x| = m*2^e to an integer with ~digits significant decimal digits.
    // dec_exp: number of fractional decimal digits retained.
    std::int64_t m2 = mag2();                      // |x| < 2^m2
    std::int64_t dec_mag = (m2 * 30103) / 100000;  // ~ log10(2)*m2, |x| < ~10^(dec_mag+1)
    std::int64_t frac = digits - dec_mag;
    BigInt num = abs_int(m_);
    std::int64_t e = e_;
    BigInt scaled;
    // scaled = floor or ceil of |x| * 10^frac
    BigInt p10 = frac >= 0 ? pow_int(BigInt(10), static_cast<unsigned>(frac)) : BigInt(1);
    BigInt q10 = frac < 0 ? pow_int(BigInt(10), static_cast<unsigned>(-frac)) : BigInt(1);
    BigInt n = num * p10;
    bool exact;
    if (e >= 0) {
        n <<= static_cast<unsigned>(e);
        scaled = n / q10;
        exact = (scaled * q10 == n);
    } else {
        BigInt den = q10 << static_cast<unsigned>(-e);
        scaled = n / den;
        exact = (scaled * den == n);
    }
    if (!exact && (up != neg)) ++scaled;
    std::string s = scaled.str();
    std::string out;
    if (frac <= 0) {
        out = s + std::string(static_cast<std::size_t>(-frac), '0');
    } else if (static_cast<std::int64_t>(s.size()) > frac) {
        out = s.substr(0, s.size() - frac) + "." + s.substr(s.size() - frac);
    } else {
        out = "0." + std::string(static_cast<std::size_t>(frac - s.size()), '0') + s;
    }
    return neg ? "-" + out : out;
}

}  // namespace oppenheim
