// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "oppenheim/bigint.hpp"
#include "oppenheim/errors.hpp"
#include "oppenheim/interval.hpp"
#include "oppenheim/real_spec.hpp"
#include "oppenheim/surd.hpp"

namespace oppenheim {

struct Vec3 {
    BigInt x, y, z;

    bool is_zero() const { return x.is_zero() && y.is_zero() && z.is_zero(); }
    BigInt norm_inf() const {
        BigInt n = abs_int(x);
        if (abs_int(y) > n) n = abs_int(y);
        if (abs_int(z) > n) n = abs_int(z);
        return n;
    }
    friend bool operator==(const Vec3& a, const Vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
    std::string to_string() const { return "(" + x.str() + "," + y.str() + "," + z.str() + ")"; }
};

// Q_alpha(x,y,z) = x^2 + y^2 - alpha z^2 for a certified-positive irrational
// alpha. beta = sqrt(alpha) is derived once and shared. A structurally
// rational alpha is rejected here: the form would be proportional to a
// rational one, outside the problem's hypothesis. For decimal oracles the
// irrationality of alpha is the caller's responsibility (not decidable from
// finitely many digits).
class TernaryForm {
  public:
    explicit TernaryForm(RealSpec alpha, PrecisionBudget budget = PrecisionBudget::defaults())
        : alpha_(std::move(alpha)), budget_(budget) {
        if (alpha_.certainly_rational()) throw DomainError("alpha must be irrational");
        // certify alpha > 0
        bool positive = false;
        for (std::int64_t prec = budget_.start; prec <= budget_.budget; prec *= 2) {
            Interval a = alpha_.eval(prec);
            if (a.strictly_positive()) {
                positive = true;
                break;
            }
            if (a.strictly_negative()) throw DomainError("alpha must be positive");
        }
        if (!positive) throw PrecisionExhausted("could not certify alpha > 0 within budget");
        beta_ = alpha_.sqrt();
        alpha_exact_ = alpha_.exact_surd();
    }

    const RealSpec& alpha() const { return alpha_; }
    const RealSpec& beta() const { return beta_; }
    const PrecisionBudget& budget() const { return budget_; }

    // Exact value of Q(v) in the quadratic field of alpha, when available.
    std::optional<Surd> evaluate_exact(const Vec3& v) const {
        if (!alpha_exact_) return std::nullopt;
        BigRat s(v.x * v.x + v.y * v.y);
        return Surd(s) - *alpha_exact_ * BigRat(v.z * v.z);
    }

    // Enclosure of Q(v) of width <= target_width.
    Interval evaluate(const Vec3& v, const Dyadic& target_width) const {
        if (alpha_exact_) {
            Surd val = *evaluate_exact(v);
            std::int64_t bits = 64;
            for (;;) {
                Interval enc = val.enclosure(bits);
                if (Dyadic::cmp(enc.width(), target_width) <= 0) return enc;
                bits *= 2;
                if (bits > budget_.budget) throw PrecisionExhausted("evaluate_form width unreachable");
            }
        }
        BigInt s = v.x * v.x + v.y * v.y;
        BigInt z2 = v.z * v.z;
        for (std::int64_t prec = budget_.start; prec <= budget_.budget; prec *= 2) {
            Interval az2 = Interval::scale(alpha_.eval(prec), BigRat(z2), prec + 8);
            Interval q = Interval::sub(Interval::exact_int(s), az2, prec + 8);
            if (Dyadic::cmp(q.width(), target_width) <= 0) return q;
        }
        throw PrecisionExhausted("evaluate_form width unreachable within budget");
    }

    // Certified |Q(v)| <= eps. Tri-state:
    //   1  certified |Q(v)| <= eps
    //  -1  certified |Q(v)| >  eps
    //   0  undecided within budget (only possible for non-surd alpha)
    int certify_abs_leq(const Vec3& v, const BigRat& eps) const {
        if (auto exact = evaluate_exact(v)) {
            return exact->abs().cmp_rational(eps) <= 0 ? 1 : -1;
        }
        BigInt s = v.x * v.x + v.y * v.y;
        BigInt z2 = v.z * v.z;
        for (std::int64_t prec = budget_.start; prec <= budget_.budget; prec *= 2) {
            Interval az2 = Interval::scale(alpha_.eval(prec), BigRat(z2), prec + 8);
            Interval q = Interval::sub(Interval::exact_int(s), az2, prec + 8);
            Interval a = Interval::abs(q);
            if (cmp_dyadic_rational(a.hi(), eps) <= 0) return 1;
            if (cmp_dyadic_rational(a.lo(), eps) > 0) return -1;
        }
        return 0;
    }

  private:
    RealSpec alpha_;
    RealSpec beta_;
    std::optional<Surd> alpha_exact_;
    PrecisionBudget budget_;
};

}  // namespace oppenheim
