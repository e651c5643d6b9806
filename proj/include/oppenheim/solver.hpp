// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "oppenheim/continued_fraction.hpp"
#include "oppenheim/form.hpp"
#include "oppenheim/oracle.hpp"
#include "oppenheim/probe.hpp"
#include "oppenheim/profile.hpp"

namespace oppenheim {

// Replayable summary of the probe that produced a generic solution: together
// with the RealSpec of alpha it reproduces every certified comparison.
struct ProbeCertificate {
    std::int64_t n = 0;
    BigInt N, p2n, q2n;
    Vec3 u;
    std::string I1_lo, I1_hi, I2_lo, I2_hi;  // outward decimal brackets
    BigInt M1, M2;
};

struct Solution {
    enum class Path { Generic, Watson, Liouville, Reduced, Sweep };

    Vec3 v;
    Interval value;  // certified enclosure of Q(v), |value| <= eps
    std::optional<Surd> value_exact;
    BigRat epsilon;
    Path path = Path::Generic;
    BigInt norm;

    // generic path
    std::int64_t n = -1;
    BigInt a;
    std::optional<ProbeCertificate> probe_cert;
    std::int64_t n1 = -1;    // n1(eps) for the profile used (when eps < 1)
    bool within_n1 = false;  // diagnostic: success index <= n1

    std::optional<DiophantineProfile> profile;

    // liouville path
    BigInt lio_p, lio_q;
    std::int64_t lio_n = -1;

    // reduced path
    std::shared_ptr<Solution> inner;
    BigInt reduce_scale;

    // sweep path
    BigInt sweep_z;
};

inline const char* to_string(Solution::Path p) {
    switch (p) {
        case Solution::Path::Generic: return "generic";
        case Solution::Path::Watson: return "watson";
        case Solution::Path::Liouville: return "liouville";
        case Solution::Path::Reduced: return "reduced";
        case Solution::Path::Sweep: return "sweep";
    }
    return "?";
}

struct SolveOptions {
    std::int64_t n_max = -1;          // <= 0: n1(eps) + 8
    bool enable_sweep = true;         // cone sweep after the probe ladder
    BigInt sweep_cap = BigInt(1) << 26;
    std::int64_t candidate_cap = 100000;  // per hitting interval
};

namespace detail {

// Soundness gate: the certified value enclosure, re-verified at 4x the
// precision that first certified it.
inline Interval certify_value(const TernaryForm& form, const Vec3& v, const BigRat& eps) {
    if (v.is_zero()) throw DomainError("internal: zero vector proposed as solution");
    std::int64_t first_ok = -1;
    for (std::int64_t prec = 96; prec <= form.budget().budget; prec *= 2) {
        Interval q = form.evaluate(v, Dyadic::pow2(-prec));
        Interval a = Interval::abs(q);
        if (cmp_dyadic_rational(a.hi(), eps) <= 0) {
            first_ok = prec;
            break;
        }
        if (cmp_dyadic_rational(a.lo(), eps) > 0)
            throw DomainError("internal: candidate fails |Q(v)| <= eps");
    }
    if (first_ok < 0) throw PrecisionExhausted("solution certification exhausted budget");
    Interval q4 = form.evaluate(v, Dyadic::pow2(-4 * first_ok));
    if (cmp_dyadic_rational(Interval::abs(q4).hi(), eps) > 0)
        throw DomainError("internal: 4x re-verification failed");
    return q4;
}

inline std::vector<BigInt> interval_candidates(const Interval& I, const BigInt& q,
                                               std::int64_t cap) {
    MultipleSearch ms = find_multiple(I, q);
    std::vector<BigInt> out;
    BigInt lo = ms.a_min - 1, hi = ms.a_max + 1;  // boundary slack; exact check gates
    if (hi - lo > 2 * cap) {  // keep the |a|-smallest slice when the interval is huge
        // centered at zero if inside, else at the near edge
        if (lo.sign() <= 0 && hi.sign() >= 0) {
            lo = std::max(lo, BigInt(-cap));
            hi = std::min(hi, BigInt(cap));
        } else if (lo.sign() > 0) {
            hi = lo + 2 * cap;
        } else {
            lo = hi - 2 * cap;
        }
    }
    for (BigInt a = lo; a <= hi; ++a)
        if (!a.is_zero()) out.push_back(a);
    std::sort(out.begin(), out.end(), [](const BigInt& a, const BigInt& b) {
        BigInt aa = abs_int(a), ab = abs_int(b);
        if (aa != ab) return aa < ab;
        return a > b;  // positive before negative on |a| ties
    });
    return out;
}

}  // namespace detail

// Constructive solver. Iterates the probe ladder n = 1..n_max accepting the
// first certified solution (the scheduled n_1 is an upper estimate, not an
// optimum; in practice hits come much earlier). Both hitting intervals and
// both time directions are searched. If the ladder exhausts its horizon
// without a certified multiple -- which does happen: the hitting intervals
// shrink relative to q_2n on typical badly-approximable inputs -- a
// deterministic cone-neighborhood sweep completes the search with the same
// exact certification gate.
inline Solution solve(const TernaryForm& form, const DiophantineProfile& profile, const BigRat& eps,
                      SolveOptions opts = SolveOptions{}) {
    if (eps.sign() <= 0) throw DomainError("epsilon must be positive");
    std::int64_t n1 = -1;
    if (eps < 1) n1 = n1_of(profile, eps);
    std::int64_t n_max = opts.n_max > 0 ? opts.n_max : (n1 > 0 ? n1 + 8 : 8);

    ContinuedFraction cf(form.beta(), form.budget());

    auto finalize = [&](Solution s) {
        s.epsilon = eps;
        s.value = detail::certify_value(form, s.v, eps);
        s.value_exact = form.evaluate_exact(s.v);
        s.norm = s.v.norm_inf();
        s.profile = profile;
        s.n1 = n1;
        s.within_n1 = s.path == Solution::Path::Generic && n1 > 0 && s.n <= n1;
        return s;
    };

    bool ladder_budget_hit = false;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        LineProbe pr;
        try {
            pr = probe(form, cf, profile, n, eps);
        } catch (const PrecisionExhausted&) {
            ladder_budget_hit = true;
            break;
        }
        if (pr.point_is_solution) {
            Solution s;
            s.path = Solution::Path::Generic;
            s.v = pr.u;
            s.n = n;
            s.a = 0;
            return finalize(std::move(s));
        }
        auto hi = hitting_intervals(pr);
        if (!hi) continue;
        auto cert = [&](const LineProbe& p) {
            ProbeCertificate c;
            c.n = p.n;
            c.N = p.N;
            c.p2n = p.p2n;
            c.q2n = p.q2n;
            c.u = p.u;
            c.I1_lo = p.roots[0].t.lo().to_decimal(32, false);
            c.I1_hi = p.roots[1].t.hi().to_decimal(32, true);
            c.I2_lo = p.roots[2].t.lo().to_decimal(32, false);
            c.I2_hi = p.roots[3].t.hi().to_decimal(32, true);
            c.M1 = p.M1;
            c.M2 = p.M2;
            return c;
        };
        for (const Interval& I : {hi->I1, hi->I2}) {
            for (const BigInt& a : detail::interval_candidates(I, pr.q2n, opts.candidate_cap)) {
                Vec3 v{pr.u.x - a * pr.p2n, -a, pr.u.z - a * pr.q2n};
                if (v.is_zero()) continue;
                if (form.certify_abs_leq(v, eps) == 1) {
                    Solution s;
                    s.path = Solution::Path::Generic;
                    s.v = v;
                    s.n = n;
                    s.a = a;
                    s.probe_cert = cert(pr);
                    return finalize(std::move(s));
                }
            }
        }
    }
    (void)ladder_budget_hit;

    if (opts.enable_sweep) {
        if (auto hit = sweep_first_below(form, eps, opts.sweep_cap)) {
            Solution s;
            s.path = Solution::Path::Sweep;
            s.v = hit->v;
            s.sweep_z = hit->z_reached;
            return finalize(std::move(s));
        }
    }
    throw NoSolutionWithinHorizon("no certified solution within ladder horizon n_max=" +
                                  std::to_string(n_max) + (opts.enable_sweep ? " and sweep cap" : ""));
}

}  // namespace oppenheim
