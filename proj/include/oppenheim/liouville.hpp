// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "oppenheim/form.hpp"
#include "oppenheim/solver.hpp"

namespace oppenheim {

// Supplies super-approximations: gen(n) must return (p, q) with q >= 2 and
// |q beta - p| < 1/q^(n+2). Liouville-ness is not decidable from finite data,
// so the generator is the caller's claim; every output is certified here and
// a violation raises BadGenerator.
using SuperApproxGenerator = std::function<std::pair<BigInt, BigInt>(std::int64_t)>;

// Generator backed by the built-in Liouville constant: stage-k truncation
// p = sum 2^(s_k - s_j), q = 2^(s_k), which satisfies the order-n contract as
// soon as s_{k+1} >= (n+3) s_k + 1.
inline SuperApproxGenerator liouville_constant_generator() {
    return [](std::int64_t n) {
        for (int k = 1; k < 64; ++k) {
            std::int64_t sk = LiouvilleSchedule::term(k);
            std::int64_t sk1 = LiouvilleSchedule::term(k + 1);
            if (sk1 >= (n + 3) * sk + 1) return RealSpec::liouville_truncation(k);
        }
        throw PrecisionExhausted("liouville truncation stage unreachable", -1);
    };
}

// Case-1 path: for beta a Liouville number, v = (p, 0, q) from a single
// super-approximation solves |Q(v)| <= eps for the form with alpha = beta^2.
// n is the least index with 2^-n beta_upper + 2^-2(n+2) <= eps (the proof's
// sufficient condition); the generator's contract at that n is certified
// before use.
inline Solution liouville_solve(const RealSpec& beta, const SuperApproxGenerator& gen,
                                const BigRat& eps,
                                const PrecisionBudget& pb = PrecisionBudget::defaults()) {
    if (eps.sign() <= 0) throw DomainError("epsilon must be positive");

    Dyadic beta_upper = beta.eval(64).hi();
    std::int64_t n = 0;
    for (;; ++n) {
        if (n > 100000) throw DomainError("epsilon too small for the scheduling condition");
        Dyadic lhs = beta_upper * Dyadic::pow2(-n) + Dyadic::pow2(-2 * (n + 2));
        if (cmp_dyadic_rational(lhs, eps) <= 0) break;
    }

    auto [p, q] = gen(n);
    if (q < 2) throw BadGenerator("generator returned q < 2");

    // certify |q beta - p| < 1/q^(n+2)
    BigRat bound(BigInt(1), pow_int(q, static_cast<unsigned>(n + 2)));
    bool ok = false;
    for (std::int64_t prec = pb.start; prec <= pb.budget; prec *= 2) {
        Interval b = beta.eval(prec);
        Interval lhs = Interval::abs(
            Interval::sub(Interval::scale(b, BigRat(q), prec + 8), Interval::exact_int(p), prec + 8));
        if (cmp_dyadic_rational(lhs.hi(), bound) < 0) {
            ok = true;
            break;
        }
        if (cmp_dyadic_rational(lhs.lo(), bound) >= 0)
            throw BadGenerator("generator output violates |q beta - p| < 1/q^(n+2)");
    }
    if (!ok) throw PrecisionExhausted("generator contract not certifiable within budget");

    Solution s;
    s.path = Solution::Path::Liouville;
    s.v = Vec3{p, BigInt(0), q};
    s.lio_p = p;
    s.lio_q = q;
    s.lio_n = n;
    s.epsilon = eps;
    // final certification via the form itself (also the 4x re-verification)
    for (std::int64_t prec = pb.start; prec <= pb.budget; prec *= 2) {
        Interval b = beta.eval(prec);
        Interval qb = Interval::scale(b, BigRat(q), prec + 8);
        Interval diff = Interval::sub(Interval::exact_int(p), qb, prec + 8);
        Interval sum = Interval::add(Interval::exact_int(p), qb, prec + 8);
        Interval val = Interval::mul(diff, sum, prec + 8);
        if (cmp_dyadic_rational(Interval::abs(val).hi(), eps) <= 0) {
            s.value = val;
            s.norm = s.v.norm_inf();
            return s;
        }
    }
    throw PrecisionExhausted("liouville solution certification exhausted budget");
}

}  // namespace oppenheim
