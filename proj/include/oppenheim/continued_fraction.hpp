// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "oppenheim/bigint.hpp"
#include "oppenheim/errors.hpp"
#include "oppenheim/interval.hpp"
#include "oppenheim/real_spec.hpp"
#include "oppenheim/surd.hpp"

namespace oppenheim {

// One convergent p_n/q_n with a certified bracket on e_n = beta - p_n/q_n.
struct Convergent {
    std::int64_t n = 0;
    BigInt p, q;
    Dyadic e_lo, e_hi;          // certified: e_n in [e_lo, e_hi]
    std::optional<Surd> exact;  // exact e_n when beta is a quadratic surd
};

// Certified continued fraction expansion of an irrational described real.
//
// Quadratic-surd sources use the exact complete-quotient recurrence on
// integer state (P + sqrt(D))/Q, so every partial quotient is exact; other
// sources run interval arithmetic with restart-doubling precision. A
// PrecisionExhausted from extend_to reports how far certification reached;
// the quotients certified so far remain valid (hard ceiling).
class ContinuedFraction {
  public:
    explicit ContinuedFraction(RealSpec beta, PrecisionBudget budget = PrecisionBudget::defaults())
        : source_(std::move(beta)), budget_(budget) {
        if (source_.certainly_rational()) throw DomainError("continued fraction source must be irrational");
        if (auto s = source_.exact_surd()) {
            exact_ = true;
            init_exact(*s);
        }
        // p_{-1}/q_{-1} = 1/0 seeds the recurrence
        pm1_ = 1;
        qm1_ = 0;
    }

    const RealSpec& source() const { return source_; }

    // Index of the last certified quotient, -1 if none yet.
    std::int64_t certified_to() const {
        std::lock_guard<std::mutex> lock(mu_);
        return static_cast<std::int64_t>(b_.size()) - 1;
    }

    // Certify quotients b_0..b_m. Throws PrecisionExhausted (with the index
    // reached) if the budget runs out first.
    void extend_to(std::int64_t m) {
        std::lock_guard<std::mutex> lock(mu_);
        extend_locked(m);
    }

    BigInt quotient(std::int64_t k) {
        std::lock_guard<std::mutex> lock(mu_);
        extend_locked(k);
        return b_[static_cast<std::size_t>(k)];
    }

    BigInt p(std::int64_t k) {
        std::lock_guard<std::mutex> lock(mu_);
        extend_locked(k);
        return p_[static_cast<std::size_t>(k)];
    }
    BigInt q(std::int64_t k) {
        std::lock_guard<std::mutex> lock(mu_);
        extend_locked(k);
        return q_[static_cast<std::size_t>(k)];
    }

    // Exact ratio q_{n+1}/q_n as a rational (point interval in spirit).
    BigRat lambda_ratio(std::int64_t n) {
        std::lock_guard<std::mutex> lock(mu_);
        extend_locked(n + 1);
        return BigRat(q_[static_cast<std::size_t>(n + 1)], q_[static_cast<std::size_t>(n)]);
    }

    // Convergent with certified error bracket; needs quotient n+1, so it may
    // extend the expansion (and may throw PrecisionExhausted).
    Convergent convergent(std::int64_t n) {
        std::lock_guard<std::mutex> lock(mu_);
        if (n < 0) throw IndexError("convergent index negative");
        extend_locked(n + 1);
        return convergent_locked(n);
    }

    // Dirichlet point at scale N: the convergent with the largest q_k <= N.
    // Satisfies |p - beta q| <= 1/N with 1 <= q <= N (certified: the next
    // denominator exceeds N, and |q_k beta - p_k| < 1/q_{k+1}).
    std::pair<BigInt, BigInt> dirichlet_point(const BigInt& N) {
        if (N.sign() <= 0) throw DomainError("dirichlet scale must be positive");
        std::lock_guard<std::mutex> lock(mu_);
        std::int64_t k = 0;
        extend_locked(1);
        while (q_[static_cast<std::size_t>(k + 1)] <= N) {
            ++k;
            extend_locked(k + 1);
        }
        return {p_[static_cast<std::size_t>(k)], q_[static_cast<std::size_t>(k)]};
    }

    // Detected period (start index, length) for quadratic surd sources, once
    // the complete-quotient state has repeated. Consistency aid only.
    std::optional<std::pair<std::int64_t, std::int64_t>> period() const {
        std::lock_guard<std::mutex> lock(mu_);
        return period_;
    }

    bool exact_path() const { return exact_; }

  private:
    void init_exact(const Surd& s) {
        // beta = a + b sqrt(d) = (P0 + sqrt(D0)) / Q0 with integer state
        const BigRat& a = s.rational_part();
        const BigRat& b = s.radical_part();
        BigInt g = denom(a) * denom(b);
        BigInt u = numer(a) * denom(b);       // a = u/g
        BigInt r = numer(b) * denom(a);       // b = r/g
        BigInt P = u, Q = g;
        BigInt D = r * r * s.radicand();
        if (r.sign() < 0) {
            P = -P;
            Q = -Q;
        }
        // enforce Q | D - P^2
        if (((D - P * P) % Q) != 0) {
            BigInt aq = abs_int(Q);
            P *= aq;
            D *= aq * aq;
            Q *= aq;
        }
        P_ = P;
        Q_ = Q;
        D_ = D;
        sqrtD_ = isqrt_floor(D_);
    }

    void extend_locked(std::int64_t m) {
        while (static_cast<std::int64_t>(b_.size()) <= m) {
            if (exact_) {
                step_exact();
            } else {
                if (!step_interval()) {
                    throw PrecisionExhausted("continued fraction quotient not certifiable within budget",
                                             static_cast<std::int64_t>(b_.size()) - 1);
                }
            }
        }
    }

    void push_quotient(const BigInt& bk) {
        if (b_.empty()) {
            p_.push_back(bk);
            q_.push_back(1);
        } else if (b_.size() == 1) {
            p_.push_back(bk * p_[0] + pm1_);
            q_.push_back(bk * q_[0] + qm1_);
        } else {
            std::size_t k = b_.size();
            p_.push_back(bk * p_[k - 1] + p_[k - 2]);
            q_.push_back(bk * q_[k - 1] + q_[k - 2]);
        }
        b_.push_back(bk);
    }

    void step_exact() {
        // complete quotient x_k = (P + sqrt(D)) / Q, floor via isqrt(D)
        BigInt num = P_ + (Q_.sign() > 0 ? sqrtD_ : sqrtD_ + 1);
        BigInt bk = floor_div(num, Q_);
        // period bookkeeping on the pre-step state (only meaningful k >= 1)
        if (!b_.empty() && !period_) {
            auto key = std::make_pair(P_, Q_);
            auto it = seen_.find(key);
            if (it != seen_.end()) {
                period_ = std::make_pair(it->second, static_cast<std::int64_t>(b_.size()) - it->second);
            } else {
                seen_.emplace(key, static_cast<std::int64_t>(b_.size()));
            }
        }
        push_quotient(bk);
        BigInt Pn = bk * Q_ - P_;
        BigInt Qn = (D_ - Pn * Pn) / Q_;
        P_ = Pn;
        Q_ = Qn;
    }

    // Try to certify quotients up to the next missing index by recomputing
    // the whole chain at doubling precision. Returns false when the budget is
    // exhausted before making progress.
    bool step_interval() {
        std::size_t want = b_.size() + 1;
        for (std::int64_t prec = std::max<std::int64_t>(last_prec_, budget_.start); prec <= budget_.budget;
             prec *= 2) {
            last_prec_ = prec;
            std::vector<BigInt> fresh;
            Interval x;
            try {
                x = source_.eval(prec);
            } catch (const PrecisionExhausted&) {
                return false;  // the source itself cannot refine further
            }
            bool ok = true;
            while (fresh.size() < want) {
                BigInt flo = x.lo().floor(), fhi = x.hi().floor();
                if (flo != fhi) {
                    ok = false;
                    break;
                }
                fresh.push_back(flo);
                Interval frac = Interval::sub(x, Interval::exact_int(flo), prec + 8);
                if (!(frac.lo().sign() > 0)) {
                    ok = false;  // cannot certify the fractional part positive
                    break;
                }
                x = Interval::recip(frac, prec);
            }
            if (!ok) continue;
            // certified floors are unique, so the fresh prefix must agree
            for (std::size_t i = 0; i < b_.size(); ++i) {
                if (fresh[i] != b_[i]) throw DomainError("internal: continued fraction prefix mismatch");
            }
            for (std::size_t i = b_.size(); i < fresh.size(); ++i) push_quotient(fresh[i]);
            return true;
        }
        return false;
    }

    Convergent convergent_locked(std::int64_t n) {
        Convergent c;
        c.n = n;
        c.p = p_[static_cast<std::size_t>(n)];
        c.q = q_[static_cast<std::size_t>(n)];
        const BigInt& qn = c.q;
        const BigInt& qn1 = q_[static_cast<std::size_t>(n + 1)];
        // bracket targets: sign-definite and tight enough to certify the
        // strict truths 1/(2 q_{n+1}^2) < |e_n| < 1/(q_n q_{n+1})
        BigRat cn(c.p, c.q);
        BigRat lo_bound(BigInt(1), 2 * qn1 * qn1);
        BigRat hi_bound(BigInt(1), qn * qn1);
        if (exact_) {
            Surd e = *source_.exact_surd() - cn;
            c.exact = e;
            std::int64_t bits = 2 * bit_length(qn1) + 64;
            Interval enc = e.enclosure(bits);
            c.e_lo = enc.lo();
            c.e_hi = enc.hi();
            return c;
        }
        for (std::int64_t prec = std::max<std::int64_t>(2 * bit_length(qn1) + 32, budget_.start);
             prec <= budget_.budget; prec *= 2) {
            Interval beta;
            try {
                beta = source_.eval(prec);
            } catch (const PrecisionExhausted&) {
                break;
            }
            Interval e = Interval::sub(beta, Interval::from_rational(cn, prec + 8), prec);
            if (e.sign() == 0) continue;
            Interval ae = Interval::abs(e);
            if (cmp_dyadic_rational(ae.lo(), lo_bound) > 0 && cmp_dyadic_rational(ae.hi(), hi_bound) < 0) {
                c.e_lo = e.lo();
                c.e_hi = e.hi();
                return c;
            }
        }
        throw PrecisionExhausted("convergent error bracket not certifiable within budget", n);
    }

    RealSpec source_;
    PrecisionBudget budget_;
    mutable std::mutex mu_;

    std::vector<BigInt> b_, p_, q_;
    BigInt pm1_, qm1_;

    bool exact_ = false;
    BigInt P_, Q_, D_, sqrtD_;
    std::map<std::pair<BigInt, BigInt>, std::int64_t> seen_;
    std::optional<std::pair<std::int64_t, std::int64_t>> period_;

    std::int64_t last_prec_ = 0;
};

}  // namespace oppenheim
