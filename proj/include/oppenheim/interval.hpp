// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>

#include "oppenheim/dyadic.hpp"
#include "oppenheim/errors.hpp"

namespace oppenheim {

// Default precision ladder: escalation doubles from `start` until `budget`.
struct PrecisionBudget {
    std::int64_t start = 64;
    std::int64_t budget = 1 << 20;

    static std::int64_t env_budget() {
        if (const char* s = std::getenv("OPPENHEIM_PRECISION_BUDGET")) {
            char* end = nullptr;
            long long v = std::strtoll(s, &end, 10);
            if (end != s && v >= 64) return v;
        }
        return 1 << 20;
    }
    static PrecisionBudget defaults() { return PrecisionBudget{64, env_budget()}; }
};

// Closed interval [lo, hi] with dyadic endpoints. Every operation returns an
// enclosure of the exact image; rounding is always outward at the working
// precision passed to the operation.
class Interval {
  public:
    Interval() : lo_(), hi_() {}
    explicit Interval(const Dyadic& point) : lo_(point), hi_(point) {}
    Interval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (lo_ > hi_) throw DomainError("interval endpoints out of order");
    }

    static Interval exact_int(const BigInt& v) { return Interval(Dyadic(v, 0)); }
    static Interval from_rational(const BigRat& q, std::int64_t bits) {
        if (denom(q) == 1) return exact_int(numer(q));
        return Interval(Dyadic::from_rational(q, bits, false), Dyadic::from_rational(q, bits, true));
    }

    const Dyadic& lo() const { return lo_; }
    const Dyadic& hi() const { return hi_; }
    Dyadic width() const { return hi_ - lo_; }
    Dyadic mid() const { return Dyadic((lo_ + hi_).mantissa(), (lo_ + hi_).exponent() - 1); }

    bool is_point() const { return lo_ == hi_; }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool contains(const Dyadic& v) const { return lo_ <= v && v <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool strictly_positive() const { return lo_.sign() > 0; }
    bool strictly_negative() const { return hi_.sign() < 0; }

    // Certified sign: -1/+1 when the interval is sign-definite, 0 when it
    // straddles (undecided, not "equal to zero").
    int sign() const {
        if (strictly_positive()) return 1;
        if (strictly_negative()) return -1;
        return 0;
    }

    Interval rounded_out(std::int64_t bits) const {
        return Interval(lo_.round_down(bits), hi_.round_up(bits));
    }

    friend Interval operator-(const Interval& a) { return Interval(-a.hi_, -a.lo_); }

    static Interval add(const Interval& a, const Interval& b, std::int64_t bits) {
        return Interval((a.lo_ + b.lo_).round_down(bits), (a.hi_ + b.hi_).round_up(bits));
    }
    static Interval sub(const Interval& a, const Interval& b, std::int64_t bits) {
        return add(a, -b, bits);
    }
    static Interval mul(const Interval& a, const Interval& b, std::int64_t bits) {
        const Dyadic p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
        Dyadic lo = std::min(std::min(p1, p2), std::min(p3, p4));
        Dyadic hi = std::max(std::max(p1, p2), std::max(p3, p4));
        return Interval(lo.round_down(bits), hi.round_up(bits));
    }
    static Interval square(const Interval& a, std::int64_t bits) {
        if (a.lo_.sign() >= 0) return Interval((a.lo_ * a.lo_).round_down(bits), (a.hi_ * a.hi_).round_up(bits));
        if (a.hi_.sign() <= 0) return Interval((a.hi_ * a.hi_).round_down(bits), (a.lo_ * a.lo_).round_up(bits));
        Dyadic m = std::max(a.lo_.abs(), a.hi_.abs());
        return Interval(Dyadic(), (m * m).round_up(bits));
    }
    // 1/b; requires b sign-definite.
    static Interval recip(const Interval& b, std::int64_t bits) {
        if (b.contains_zero()) throw DomainError("interval reciprocal across zero");
        Dyadic one(1);
        return Interval(Dyadic::div(one, b.hi_, bits, false), Dyadic::div(one, b.lo_, bits, true));
    }
    static Interval div(const Interval& a, const Interval& b, std::int64_t bits) {
        return mul(a, recip(b, bits), bits);
    }
    // sqrt; requires lo >= 0.
    static Interval sqrt(const Interval& a, std::int64_t bits) {
        if (a.lo_.sign() < 0) throw DomainError("interval sqrt of negative range");
        return Interval(Dyadic::sqrt(a.lo_, bits, false), Dyadic::sqrt(a.hi_, bits, true));
    }
    static Interval abs(const Interval& a) {
        if (a.lo_.sign() >= 0) return a;
        if (a.hi_.sign() <= 0) return -a;
        return Interval(Dyadic(), std::max(a.lo_.abs(), a.hi_.abs()));
    }
    static Interval scale(const Interval& a, const BigRat& c, std::int64_t bits) {
        return mul(a, from_rational(c, bits), bits);
    }
    static Interval hull(const Interval& a, const Interval& b) {
        return Interval(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
    }

    // Tri-state interval comparison: -1 if a < b certainly, +1 if a > b
    // certainly, 0 if the intervals overlap.
    static int cmp(const Interval& a, const Interval& b) {
        if (a.hi_ < b.lo_) return -1;
        if (a.lo_ > b.hi_) return 1;
        return 0;
    }

    std::string to_string(int digits = 24) const {
        return "[" + lo_.to_decimal(digits, false) + ", " + hi_.to_decimal(digits, true) + "]";
    }

  private:
    Dyadic lo_, hi_;
};

enum class Ordering { Less, Greater, Undecided };

// Interval producer: evaluates an enclosure at a requested precision (bits).
// Refinement contract: higher precision yields an interval contained in (or
// at least consistent with) lower-precision ones; both always contain the
// exact value.
using IntervalFn = std::function<Interval(std::int64_t)>;

// Compare two interval producers by escalating precision until separation or
// budget exhaustion. Undecided is an answer, never an error.
inline Ordering certified_compare(const IntervalFn& x, const IntervalFn& y,
                                  const PrecisionBudget& pb = PrecisionBudget::defaults()) {
    for (std::int64_t prec = pb.start; prec <= pb.budget; prec *= 2) {
        Interval a = x(prec), b = y(prec);
        int c = Interval::cmp(a, b);
        if (c < 0) return Ordering::Less;
        if (c > 0) return Ordering::Greater;
    }
    return Ordering::Undecided;
}

}  // namespace oppenheim
