// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include "oppenheim/bigint.hpp"
#include "oppenheim/errors.hpp"
#include "oppenheim/interval.hpp"

namespace oppenheim {

// Exact element a + b*sqrt(d) of a real quadratic field (or of Q when b == 0).
// d >= 0; a perfect-square d is folded into the rational part on construction,
// so is_rational() is an exact test. Arithmetic between two surds requires a
// common radicand (or one operand rational).
class Surd {
  public:
    Surd() : a_(0), b_(0), d_(0) {}
    explicit Surd(const BigRat& rational) : a_(rational), b_(0), d_(0) {}
    Surd(BigRat a, BigRat b, BigInt d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
        if (d_.sign() < 0) throw DomainError("negative radicand");
        normalize();
    }

    static Surd sqrt_of_int(const BigInt& d) { return Surd(BigRat(0), BigRat(1), d); }

    const BigRat& rational_part() const { return a_; }
    const BigRat& radical_part() const { return b_; }
    const BigInt& radicand() const { return d_; }

    bool is_rational() const { return b_.is_zero(); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    // Exact sign of a + b*sqrt(d).
    int sign() const {
        int sa = sign_of(a_), sb = sign_of(b_);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: compare a^2 vs b^2 d
        BigRat lhs = a_ * a_, rhs = b_ * b_ * BigRat(d_);
        if (lhs == rhs) return 0;  // cannot happen for non-square d, kept for safety
        bool rational_side_wins = lhs > rhs;
        return rational_side_wins ? sa : sb;
    }

    Surd conjugate() const { return Surd(a_, -b_, d_); }
    Surd abs() const { return sign() < 0 ? -*this : *this; }

    friend Surd operator-(const Surd& x) { return Surd(-x.a_, -x.b_, x.d_); }
    friend Surd operator+(const Surd& x, const Surd& y) {
        BigInt d = common_radicand(x, y);
        return Surd(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend Surd operator-(const Surd& x, const Surd& y) { return x + (-y); }
    friend Surd operator*(const Surd& x, const Surd& y) {
        BigInt d = common_radicand(x, y);
        return Surd(x.a_ * y.a_ + x.b_ * y.b_ * BigRat(d), x.a_ * y.b_ + x.b_ * y.a_, d);
    }
    friend Surd operator*(const Surd& x, const BigRat& c) { return Surd(x.a_ * c, x.b_ * c, x.d_); }
    friend Surd operator+(const Surd& x, const BigRat& c) { return Surd(x.a_ + c, x.b_, x.d_); }
    friend Surd operator-(const Surd& x, const BigRat& c) { return Surd(x.a_ - c, x.b_, x.d_); }

    Surd inverse() const {
        if (is_zero()) throw DomainError("surd division by zero");
        // 1/(a+b sqrt d) = (a - b sqrt d) / (a^2 - b^2 d)
        BigRat n = a_ * a_ - b_ * b_ * BigRat(d_);
        return Surd(a_ / n, -b_ / n, d_);
    }
    friend Surd operator/(const Surd& x, const Surd& y) { return x * y.inverse(); }

    friend bool operator==(const Surd& x, const Surd& y) { return (x - y).is_zero(); }
    friend bool operator<(const Surd& x, const Surd& y) { return (x - y).sign() < 0; }
    friend bool operator<=(const Surd& x, const Surd& y) { return (x - y).sign() <= 0; }
    friend bool operator>(const Surd& x, const Surd& y) { return (x - y).sign() > 0; }
    friend bool operator>=(const Surd& x, const Surd& y) { return (x - y).sign() >= 0; }

    int cmp_rational(const BigRat& c) const { return (*this - c).sign(); }

    // Enclosure at the requested precision. Width <= 2^(1-bits) * max(1,|value|).
    Interval enclosure(std::int64_t bits) const {
        Interval av = Interval::from_rational(a_, bits + 8);
        if (b_.is_zero()) return av;
        Interval rt = Interval::sqrt(Interval::exact_int(d_), bits + 8);
        Interval bv = Interval::scale(rt, b_, bits + 8);
        return Interval::add(av, bv, bits + 4);
    }

    // If this surd is the square of an element of the same field, return it.
    // Solves (c + e sqrt d)^2 = a + b sqrt d exactly over Q.
    bool sqrt_in_field(Surd* out) const {
        if (sign() < 0) return false;
        if (b_.is_zero()) {
            // rational: sqrt rational iff numerator and denominator are squares
            BigInt rn, rd;
            if (is_perfect_square(numer(a_), &rn) && is_perfect_square(denom(a_), &rd)) {
                if (out) *out = Surd(BigRat(rn, rd));
                return true;
            }
            // or sqrt(a) = g*sqrt(d) for the ambient d: a = g^2 d
            if (!d_.is_zero()) {
                BigRat g2 = a_ / BigRat(d_);
                BigInt gn, gd;
                if (is_perfect_square(numer(g2), &gn) && is_perfect_square(denom(g2), &gd)) {
                    if (out) *out = Surd(BigRat(0), BigRat(gn, gd), d_);
                    return true;
                }
            }
            return false;
        }
        // c^2 + e^2 d = a, 2ce = b.  u = c^2 satisfies u^2 - a u + b^2 d/4 = 0.
        BigRat disc = a_ * a_ - b_ * b_ * BigRat(d_);
        BigInt dn, dd;
        if (disc.sign() < 0) return false;
        if (!is_perfect_square(numer(disc), &dn) || !is_perfect_square(denom(disc), &dd)) return false;
        BigRat sq(dn, dd);
        for (int pm = 0; pm < 2; ++pm) {
            BigRat u = (a_ + (pm == 0 ? sq : -sq)) / 2;
            if (u.sign() < 0) continue;
            BigInt un, ud;
            if (!is_perfect_square(numer(u), &un) || !is_perfect_square(denom(u), &ud)) continue;
            BigRat c(un, ud);
            if (c.is_zero()) continue;
            BigRat e = b_ / (BigRat(2) * c);
            Surd cand(c, e, d_);
            if (cand.sign() < 0) cand = -cand;
            if (cand * cand == *this) {
                if (out) *out = cand;
                return true;
            }
        }
        return false;
    }

    std::string to_string() const {
        if (b_.is_zero()) return oppenheim::to_string(a_);
        std::string s;
        if (!a_.is_zero()) s += oppenheim::to_string(a_);
        if (b_ == 1) {
            s += (s.empty() ? "" : " + ") + std::string("sqrt(") + d_.str() + ")";
        } else if (b_ == -1) {
            s += (s.empty() ? "-" : " - ") + std::string("sqrt(") + d_.str() + ")";
        } else if (b_.sign() > 0) {
            s += (s.empty() ? "" : " + ") + oppenheim::to_string(b_) + "*sqrt(" + d_.str() + ")";
        } else {
            s += (s.empty() ? "-" + oppenheim::to_string(-b_) : " - " + oppenheim::to_string(-b_)) +
                 "*sqrt(" + d_.str() + ")";
        }
        return s;
    }

  private:
    void normalize() {
        if (b_.is_zero()) {
            d_ = 0;
            return;
        }
        BigInt root;
        if (d_.is_zero()) {
            b_ = 0;
            return;
        }
        if (is_perfect_square(d_, &root)) {
            a_ += b_ * BigRat(root);
            b_ = 0;
            d_ = 0;
            return;
        }
        // pull small square factors out of the radicand so equal fields share
        // a representative: b sqrt(f^2 d0) = b f sqrt(d0). Larger coprime
        // square factors are left alone; mismatched radicands then fail loud
        // in common_radicand rather than comparing wrong.
        static constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
        for (int f : kPrimes) {
            BigInt f2 = BigInt(f) * f;
            while (d_ % f2 == 0) {
                d_ /= f2;
                b_ *= BigRat(f);
            }
            if (f2 > d_) break;
        }
    }

    static BigInt common_radicand(const Surd& x, const Surd& y) {
        if (x.b_.is_zero()) return y.d_;
        if (y.b_.is_zero()) return x.d_;
        if (x.d_ != y.d_) throw DomainError("surd arithmetic across different radicands");
        return x.d_;
    }

    BigRat a_, b_;
    BigInt d_;
};

}  // namespace oppenheim
