// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "oppenheim/bigint.hpp"
#include "oppenheim/continued_fraction.hpp"
#include "oppenheim/errors.hpp"
#include "oppenheim/real_spec.hpp"

namespace oppenheim {

enum class ProfileProvenance { UserSupplied, DefaultQuadratic, Empirical };

inline const char* to_string(ProfileProvenance p) {
    switch (p) {
        case ProfileProvenance::UserSupplied: return "user-supplied";
        case ProfileProvenance::DefaultQuadratic: return "default-quadratic";
        case ProfileProvenance::Empirical: return "empirical";
    }
    return "?";
}

// Parameter bundle (mu, sigma, theta, eta, C) driving the solver schedule.
// theta = mu - 1 + sigma and eta = (theta - 1)/(theta + 1) are maintained as
// exact rationals, so N_n and n_1(eps) are reproducible bit for bit.
struct DiophantineProfile {
    std::optional<BigRat> mu;  // nullopt encodes the Liouville flag (mu = infinity)
    BigRat sigma;
    BigRat theta;
    BigRat eta;
    Dyadic c_lower;            // horizon-limited lower bound for inf q^theta <q beta>
    std::int64_t c_horizon = 0;
    ProfileProvenance provenance = ProfileProvenance::DefaultQuadratic;

    static DiophantineProfile from_mu_sigma(const BigRat& mu, const BigRat& sigma,
                                            ProfileProvenance prov) {
        if (mu < 2) throw InvalidProfile("mu must be at least 2");
        if (sigma.sign() <= 0) throw InvalidProfile("sigma must be positive");
        DiophantineProfile p;
        p.mu = mu;
        p.sigma = sigma;
        p.theta = mu - 1 + sigma;
        p.eta = (p.theta - 1) / (p.theta + 1);
        p.provenance = prov;
        // identity (1 - eta) * theta - 1 == eta must hold exactly
        if ((BigRat(1) - p.eta) * p.theta - 1 != p.eta)
            throw InvalidProfile("internal: eta/theta identity failed");
        return p;
    }
};

// mu selection: quadratic surds (and square roots of surds, which are
// algebraic of degree <= 4) default to mu = 2 by Roth. Decimal oracles are
// never auto-claimed: either the caller supplies mu, or a clearly-labeled
// empirical horizon estimate 1 + max_n ln q_{n+1} / ln q_n is used.
inline DiophantineProfile profile_for(const RealSpec& beta, const BigRat& sigma,
                                      std::optional<BigRat> mu_hint = std::nullopt,
                                      ContinuedFraction* cf_for_empirical = nullptr,
                                      std::int64_t empirical_horizon = 12) {
    if (mu_hint) {
        if (*mu_hint < 2) throw InvalidProfile("mu must be at least 2");
        return DiophantineProfile::from_mu_sigma(*mu_hint, sigma, ProfileProvenance::UserSupplied);
    }
    bool algebraic = beta.exact_surd().has_value();
    if (!algebraic) {
        // sqrt of a quadratic surd is algebraic of degree <= 4
        RealSpec sq = beta.square();
        algebraic = sq.exact_surd().has_value();
    }
    if (algebraic)
        return DiophantineProfile::from_mu_sigma(BigRat(2), sigma, ProfileProvenance::DefaultQuadratic);
    if (!cf_for_empirical) throw InvalidProfile("mu unknown: supply a hint or a continued fraction");
    // empirical: mu = 1 + max_n log q_{n+1} / log q_n over the horizon; the
    // ratio is snapped upward to a 2^-12 grid so the profile stays an exact
    // rational and the estimate errs conservative
    cf_for_empirical->extend_to(empirical_horizon + 1);
    BigRat best(1);
    for (std::int64_t n = 1; n <= empirical_horizon; ++n) {
        BigInt qn = cf_for_empirical->q(n), qn1 = cf_for_empirical->q(n + 1);
        if (qn <= 1) continue;
        double r = log2_approx(qn1) / log2_approx(qn);
        BigRat snapped(BigInt(static_cast<long long>(std::ceil(r * 4096.0))), BigInt(4096));
        if (snapped > best) best = snapped;
    }
    return DiophantineProfile::from_mu_sigma(BigRat(1) + best, sigma, ProfileProvenance::Empirical);
}

// Exponent fractions must stay machine-word sized for the exact power/root
// arithmetic below; anything larger is a malformed profile.
inline std::pair<unsigned, unsigned> small_fraction(const BigRat& r, const char* what) {
    if (numer(r).sign() <= 0 || bit_length(numer(r)) > 24 || bit_length(denom(r)) > 24)
        throw InvalidProfile(std::string(what) + " exponent out of supported range");
    return {static_cast<unsigned>(numer(r).convert_to<std::uint64_t>()),
            static_cast<unsigned>(denom(r).convert_to<std::uint64_t>())};
}

// N_n = ceil(q_{2n}^(1-eta)), exactly, via integer root extraction.
inline BigInt schedule_N(const DiophantineProfile& p, const BigInt& q2n) {
    if (q2n.sign() <= 0) throw DomainError("schedule_N needs a positive denominator");
    auto [a, b] = small_fraction(BigRat(1) - p.eta, "1-eta");
    BigInt n = ceil_pow_ratio(q2n, a, b);
    return n.sign() > 0 ? n : BigInt(1);
}

// n_1(eps) = 2 + floor(eta^-1 |ln eps| / ln 2), exactly: the floor k is the
// largest k >= 0 with u^b 2^(a k) <= w^b for eps = u/w and eta = a/b.
inline std::int64_t n1_of(const DiophantineProfile& p, const BigRat& epsilon) {
    if (epsilon.sign() <= 0 || epsilon >= 1) throw DomainError("epsilon must be in (0,1)");
    BigInt u = numer(epsilon), w = denom(epsilon);
    auto [a, b] = small_fraction(p.eta, "eta");
    BigInt ub = pow_int(u, b), wb = pow_int(w, b);
    // k <= (b/a) log2(w/u)  <=>  u^b 2^(a k) <= w^b
    std::int64_t lo = 0, hi = 8 * (bit_length(wb) / std::max<std::int64_t>(1, a) + 2);
    while (lo < hi) {
        std::int64_t mid = (lo + hi + 1) / 2;
        if (ub << static_cast<unsigned>(a * mid) <= wb)
            lo = mid;
        else
            hi = mid - 1;
    }
    return 2 + lo;
}

// Certified lower bound of min over the computed horizon of q_n^theta |q_n beta - p_n|
// (the infimum defining the paper's constant C is attained along convergents).
// Horizon-limited by construction; diagnostic, never gating.
struct CEstimate {
    Dyadic lower;
    std::int64_t horizon;
};

inline CEstimate estimate_C(ContinuedFraction& cf, const BigRat& theta, std::int64_t horizon) {
    if (horizon < 2) throw DomainError("estimate_C needs at least 3 convergents");
    cf.extend_to(horizon + 1);
    auto [ta, tb] = small_fraction(theta, "theta");
    std::optional<Dyadic> best;
    for (std::int64_t n = 0; n <= horizon; ++n) {
        Convergent c = cf.convergent(n);
        // lower bound of q^theta = (q^ta)^(1/tb)
        BigInt qt = pow_int(c.q, ta);
        Dyadic qpow;
        if (tb == 1)
            qpow = Dyadic(qt, 0);
        else if (tb == 2)
            qpow = Dyadic::sqrt(Dyadic(qt, 0), bit_length(qt) / 2 + 64, false);
        else
            qpow = Dyadic(iroot_floor(qt, tb), 0);  // floor root: still a valid lower bound
        // lower bound of |q beta - p| = q |e_n|
        Dyadic e_abs_lo = std::min(c.e_lo.abs(), c.e_hi.abs());
        if (c.e_lo.sign() != c.e_hi.sign()) e_abs_lo = Dyadic();
        Dyadic term = (qpow * Dyadic(c.q, 0) * e_abs_lo).round_down(128);
        if (!best || term < *best) best = term;
    }
    return CEstimate{best->round_down(128), horizon};
}

}  // namespace oppenheim
