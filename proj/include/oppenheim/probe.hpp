// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "oppenheim/continued_fraction.hpp"
#include "oppenheim/form.hpp"
#include "oppenheim/profile.hpp"

namespace oppenheim {

// Per-index probe state: the Dirichlet point u_n = (x_n, 0, z_n) at scale
// N_n = ceil(q_2n^(1-eta)), the rational-direction line through it, and the
// quadratic f_n(t) = Q(v_n(t)) = A t^2 + B t + (x^2 - alpha z^2) whose
// +/- epsilon crossings bound the hitting intervals.
//
//   v_n(t) = (x_n - t c_2n, -t / q_2n, z_n - t)
//   A = c^2 + q^-2 - alpha,  B = -2 (c x_n - z_n alpha),  C± = x^2 - alpha z^2 ± eps
//
// At t = a q_2n the point clears denominators: (x_n - a p_2n, -a, z_n - a q_2n).
struct LineProbe {
    std::int64_t n = 0;
    BigRat epsilon;
    Vec3 u;                // (x_n, 0, z_n)
    BigInt N;              // Dirichlet scale N_n
    BigInt p2n, q2n;
    BigRat c;              // c_2n = p_2n / q_2n
    Interval delta;        // x_n - beta z_n
    Interval Qu;           // Q(u_n)
    std::optional<Surd> Qu_exact;
    bool point_is_solution = false;  // |Q(u_n)| <= eps certified

    Interval A, B, Cp, Cm;
    std::optional<Surd> A_exact, B_exact, Cp_exact, Cm_exact;
    int sign_A = 0;  // certified sign of A (never 0 on success: A is irrational)
    Interval disc_p, disc_m;  // B^2 - 4 A C^{+/-}
    bool intervals_present = false;

    // Sorted hitting-time brackets t1 < t2 < t3 < t4 with the level set each
    // root lies on: plus_eq means it solves A t^2 + B t + C^+ = 0, i.e. the
    // crossing of {Q = -eps}.
    struct Root {
        Interval t;
        bool plus_eq = false;
    };
    std::array<Root, 4> roots;

    BigInt M1, M2;  // floor(length(I_k) / q_2n), counting proxies
};

struct HittingIntervals {
    Interval I1, I2;  // outer dyadic brackets of [t1,t2] and [t3,t4]
};

namespace detail {

// Evaluate the probe coefficients as intervals at a working precision.
struct CoeffEnclosures {
    Interval A, B, Cp, Cm, disc_p, disc_m;
};

inline CoeffEnclosures coeff_enclosures(const TernaryForm& form, const LineProbe& pr, std::int64_t prec) {
    CoeffEnclosures ce;
    if (pr.A_exact) {
        ce.A = pr.A_exact->enclosure(prec);
        ce.B = pr.B_exact->enclosure(prec);
        ce.Cp = pr.Cp_exact->enclosure(prec);
        ce.Cm = pr.Cm_exact->enclosure(prec);
        Surd dp = *pr.B_exact * *pr.B_exact - *pr.A_exact * *pr.Cp_exact * BigRat(4);
        Surd dm = *pr.B_exact * *pr.B_exact - *pr.A_exact * *pr.Cm_exact * BigRat(4);
        ce.disc_p = dp.enclosure(prec);
        ce.disc_m = dm.enclosure(prec);
        return ce;
    }
    Interval alpha = form.alpha().eval(prec);
    BigRat c2 = pr.c * pr.c + BigRat(BigInt(1), pr.q2n * pr.q2n);
    ce.A = Interval::sub(Interval::from_rational(c2, prec), alpha, prec);
    // B = -2 (c x - z alpha) = 2 z alpha - 2 c x
    Interval za = Interval::scale(alpha, BigRat(2 * pr.u.z), prec);
    ce.B = Interval::sub(za, Interval::from_rational(pr.c * BigRat(2 * pr.u.x), prec), prec);
    BigInt x2 = pr.u.x * pr.u.x, z2 = pr.u.z * pr.u.z;
    Interval az2 = Interval::scale(alpha, BigRat(z2), prec);
    Interval c0 = Interval::sub(Interval::exact_int(x2), az2, prec);
    ce.Cp = Interval::add(c0, Interval::from_rational(pr.epsilon, prec), prec);
    ce.Cm = Interval::sub(c0, Interval::from_rational(pr.epsilon, prec), prec);
    Interval b2 = Interval::square(ce.B, prec);
    ce.disc_p = Interval::sub(b2, Interval::scale(Interval::mul(ce.A, ce.Cp, prec), BigRat(4), prec), prec);
    ce.disc_m = Interval::sub(b2, Interval::scale(Interval::mul(ce.A, ce.Cm, prec), BigRat(4), prec), prec);
    return ce;
}

}  // namespace detail

// Build the probe for index n. Throws DiscriminantUndecided when the budget
// runs out before the discriminant signs settle (non-surd alpha only) and
// propagates PrecisionExhausted from the continued fraction.
inline LineProbe probe(const TernaryForm& form, ContinuedFraction& cf, const DiophantineProfile& profile,
                       std::int64_t n, const BigRat& epsilon) {
    if (n < 1) throw IndexError("probe index must be >= 1");
    if (epsilon.sign() <= 0) throw DomainError("epsilon must be positive");
    LineProbe pr;
    pr.n = n;
    pr.epsilon = epsilon;
    cf.extend_to(2 * n + 1);
    pr.p2n = cf.p(2 * n);
    pr.q2n = cf.q(2 * n);
    pr.c = BigRat(pr.p2n, pr.q2n);
    pr.N = schedule_N(profile, pr.q2n);
    auto [x, z] = cf.dirichlet_point(pr.N);
    pr.u = Vec3{x, BigInt(0), z};

    const PrecisionBudget& pb = form.budget();
    std::int64_t base = 2 * bit_length(pr.q2n) + 128;

    // delta = x - beta z (diagnostic enclosure)
    pr.delta = Interval::sub(Interval::exact_int(x),
                             Interval::scale(form.beta().eval(base), BigRat(z), base), base);

    pr.Qu_exact = form.evaluate_exact(pr.u);
    pr.Qu = form.evaluate(pr.u, Dyadic::pow2(-base / 2));
    pr.point_is_solution = form.certify_abs_leq(pr.u, epsilon) == 1;

    if (auto alpha = form.alpha().exact_surd()) {
        BigRat c2 = pr.c * pr.c + BigRat(BigInt(1), pr.q2n * pr.q2n);
        pr.A_exact = Surd(c2) - *alpha;
        pr.B_exact = (*alpha * BigRat(2 * z)) - Surd(pr.c * BigRat(2 * x));
        Surd c0 = Surd(BigRat(x * x)) - *alpha * BigRat(z * z);
        pr.Cp_exact = c0 + epsilon;
        pr.Cm_exact = c0 - epsilon;
        pr.sign_A = pr.A_exact->sign();
        Surd b2 = *pr.B_exact * *pr.B_exact;
        Surd dp = b2 - *pr.A_exact * *pr.Cp_exact * BigRat(4);
        Surd dm = b2 - *pr.A_exact * *pr.Cm_exact * BigRat(4);
        pr.intervals_present = dp.sign() > 0 && dm.sign() > 0;
    } else {
        // escalate until A and both discriminants are sign-definite
        bool settled = false;
        for (std::int64_t prec = std::max(base, pb.start); prec <= pb.budget; prec *= 2) {
            auto ce = detail::coeff_enclosures(form, pr, prec);
            if (ce.A.sign() == 0) continue;
            int sp = ce.disc_p.sign(), sm = ce.disc_m.sign();
            if (sp == 0 || sm == 0) continue;
            pr.sign_A = ce.A.sign();
            pr.intervals_present = sp > 0 && sm > 0;
            settled = true;
            break;
        }
        if (!settled)
            throw DiscriminantUndecided("discriminant sign not settled within precision budget", n);
    }

    // fill coefficient enclosures, escalating until the stored intervals are
    // sign-consistent with the certified decision above
    for (std::int64_t prec = std::max(base, pb.start); prec <= pb.budget; prec *= 2) {
        auto ce = detail::coeff_enclosures(form, pr, prec);
        pr.A = ce.A;
        pr.B = ce.B;
        pr.Cp = ce.Cp;
        pr.Cm = ce.Cm;
        pr.disc_p = ce.disc_p;
        pr.disc_m = ce.disc_m;
        bool consistent = ce.A.sign() == pr.sign_A &&
                          (!pr.intervals_present || (ce.disc_p.sign() > 0 && ce.disc_m.sign() > 0));
        if (consistent) break;
    }

    if (!pr.intervals_present) return pr;

    // roots, escalated until the four brackets are pairwise disjoint
    for (std::int64_t prec = std::max(base, pb.start); prec <= pb.budget; prec *= 2) {
        auto ce = detail::coeff_enclosures(form, pr, prec);
        if (ce.A.sign() == 0 || ce.disc_p.sign() <= 0 || ce.disc_m.sign() <= 0) continue;
        auto clamp0 = [](const Interval& i) {
            return i.lo().sign() < 0 ? Interval(Dyadic(), i.hi()) : i;
        };
        Interval sp = Interval::sqrt(clamp0(ce.disc_p), prec);
        Interval sm = Interval::sqrt(clamp0(ce.disc_m), prec);
        Interval twoA = Interval::scale(ce.A, BigRat(2), prec);
        std::array<LineProbe::Root, 4> roots{
            LineProbe::Root{Interval::div(Interval::sub(-ce.B, sp, prec), twoA, prec), true},
            LineProbe::Root{Interval::div(Interval::add(-ce.B, sp, prec), twoA, prec), true},
            LineProbe::Root{Interval::div(Interval::sub(-ce.B, sm, prec), twoA, prec), false},
            LineProbe::Root{Interval::div(Interval::add(-ce.B, sm, prec), twoA, prec), false}};
        std::sort(roots.begin(), roots.end(), [](const LineProbe::Root& a, const LineProbe::Root& b) {
            return a.t.lo() < b.t.lo();
        });
        bool disjoint = true;
        for (int i = 0; i + 1 < 4; ++i)
            if (!(roots[static_cast<std::size_t>(i)].t.hi() <
                  roots[static_cast<std::size_t>(i + 1)].t.lo()))
                disjoint = false;
        if (!disjoint) continue;
        pr.roots = roots;
        auto count = [&](const Interval& a, const Interval& b) {
            Dyadic len = b.hi() - a.lo();
            if (len.sign() <= 0) return BigInt(0);
            BigRat ratio = len.to_rational() / BigRat(pr.q2n);
            return floor_div(numer(ratio), denom(ratio));
        };
        pr.M1 = count(pr.roots[0].t, pr.roots[1].t);
        pr.M2 = count(pr.roots[2].t, pr.roots[3].t);
        return pr;
    }
    throw PrecisionExhausted("probe roots not separable within precision budget", n);
}

// The two hitting intervals, when both discriminants certified positive.
inline std::optional<HittingIntervals> hitting_intervals(const LineProbe& pr) {
    if (!pr.intervals_present) return std::nullopt;
    HittingIntervals h;
    h.I1 = Interval(pr.roots[0].t.lo(), pr.roots[1].t.hi());
    h.I2 = Interval(pr.roots[2].t.lo(), pr.roots[3].t.hi());
    return h;
}

// Multiples of q inside a certified interval.
struct MultipleSearch {
    std::optional<BigInt> a;  // chosen multiplier: smallest |a|, nonzero preferred, then positive
    BigInt M;                 // floor(length(I)/q), the counting proxy
    BigInt a_min, a_max;      // all certified multiples a q in [lo, hi]
};

inline MultipleSearch find_multiple(const Interval& I, const BigInt& q) {
    if (q.sign() <= 0) throw DomainError("find_multiple needs q >= 1");
    MultipleSearch out;
    BigRat lo = I.lo().to_rational() / BigRat(q);
    BigRat hi = I.hi().to_rational() / BigRat(q);
    out.a_min = ceil_div(numer(lo), denom(lo));
    out.a_max = floor_div(numer(hi), denom(hi));
    BigRat len = I.width().to_rational() / BigRat(q);
    out.M = floor_div(numer(len), denom(len));
    if (out.a_min > out.a_max) return out;
    BigInt cand;
    if (out.a_min.sign() > 0)
        cand = out.a_min;
    else if (out.a_max.sign() < 0)
        cand = out.a_max;
    else {
        // zero is inside; prefer the smallest nonzero |a|, positive on ties
        if (out.a_max >= 1)
            cand = 1;
        else if (out.a_min <= -1)
            cand = -1;
        else
            cand = 0;  // only a = 0 available
    }
    out.a = cand;
    return out;
}

// Why plain Dirichlet cannot settle the problem: the Dirichlet point u_0 at
// scale N lands near the cone but its value is pinned in a window bounded
// away from zero. Certifies |Q(u_0)| < 2 beta + 1/N^2 (the two-sided bracket's
// upper side; the Dirichlet point can fall on either side of the cone, and
// Q(-u) = Q(u), so the bracket is reported for |Q|). The lower side, which
// carries the existential constant C, is reported with the horizon-limited C
// as a diagnostic, never as a gate.
struct DirichletGapReport {
    BigInt N;
    Vec3 u0;
    Interval Qu;                  // enclosure of Q(u_0)
    std::optional<Surd> Qu_exact;
    Interval upper_bound;         // 2 beta + 1/N^2
    bool upper_certified = false; // |Q(u_0)| < 2 beta + 1/N^2
    Dyadic c_horizon;             // the C estimate used for the lower bracket
    Dyadic lower_diag;            // (C/N^theta) (2 beta (C N)^(1/theta) + C/N^theta), rounded down
    std::optional<BigRat> eps;    // when present: check |Q(u_0)| > eps
    bool exceeds_eps = false;
};

inline DirichletGapReport dirichlet_gap(const TernaryForm& form, ContinuedFraction& cf,
                                        const DiophantineProfile& profile, const BigInt& N,
                                        std::optional<BigRat> eps = std::nullopt,
                                        std::int64_t c_horizon = 10) {
    if (N < 2) throw DomainError("dirichlet gap scale must be >= 2");
    DirichletGapReport rep;
    rep.N = N;
    auto [p, q] = cf.dirichlet_point(N);
    rep.u0 = Vec3{p, BigInt(0), q};
    rep.Qu_exact = form.evaluate_exact(rep.u0);
    rep.Qu = form.evaluate(rep.u0, Dyadic::pow2(-96));

    const PrecisionBudget& pb = form.budget();
    BigRat n2inv(BigInt(1), N * N);
    for (std::int64_t prec = pb.start; prec <= pb.budget; prec *= 2) {
        Interval beta = form.beta().eval(prec);
        Interval rhs = Interval::add(Interval::scale(beta, BigRat(2), prec),
                                     Interval::from_rational(n2inv, prec), prec);
        rep.upper_bound = rhs;
        Interval aq = Interval::abs(form.evaluate(rep.u0, Dyadic::pow2(-prec)));
        if (aq.hi() < rhs.lo()) {
            rep.upper_certified = true;
            break;
        }
    }

    // lower bracket, diagnostic: uses the horizon C and theta
    CEstimate ce = estimate_C(cf, profile.theta, c_horizon);
    rep.c_horizon = ce.lower;
    {
        std::int64_t bits = 192;
        auto [ta, tb] = small_fraction(profile.theta, "theta");
        // N^theta upper via ceil root, C/N^theta lower
        BigInt nt = pow_int(N, ta);
        BigInt root = iroot_floor(nt, tb);
        Dyadic n_theta_hi(root + 1, 0);
        Dyadic c_over = Dyadic::div(ce.lower, n_theta_hi, bits, false);
        // (C N)^(1/theta) lower: floor root of floor(C N)^tb ... keep simple and safe
        BigRat cn = ce.lower.to_rational() * BigRat(N);
        BigInt cn_floor = floor_div(numer(cn), denom(cn));
        Dyadic cn_pow(cn_floor.sign() > 0 ? iroot_floor(pow_int(cn_floor, tb), ta) : BigInt(0), 0);
        Interval beta = form.beta().eval(bits);
        Dyadic inner = (beta.lo() * Dyadic(2) * cn_pow + c_over).round_down(bits);
        rep.lower_diag = (c_over * inner).round_down(bits);
    }

    if (eps) {
        rep.eps = eps;
        if (rep.Qu_exact) {
            rep.exceeds_eps = rep.Qu_exact->abs().cmp_rational(*eps) > 0;
        } else {
            rep.exceeds_eps = form.certify_abs_leq(rep.u0, *eps) == -1;
        }
    }
    return rep;
}

}  // namespace oppenheim
