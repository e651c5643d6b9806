// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "oppenheim/bigint.hpp"
#include "oppenheim/errors.hpp"
#include "oppenheim/form.hpp"

namespace oppenheim {

// Canonical representative of the symmetry orbit of v under sign flips and
// x<->y exchange: x >= y >= 0, z >= 0.
inline Vec3 canonical(const Vec3& v) {
    BigInt x = abs_int(v.x), y = abs_int(v.y), z = abs_int(v.z);
    if (x < y) std::swap(x, y);
    return Vec3{x, y, z};
}

inline bool lex_less(const Vec3& a, const Vec3& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
}

struct OracleResult {
    BigInt N;
    Vec3 best_v;
    Interval best_value;  // enclosure of Q(best_v); |.| is the certified minimum
    std::optional<Surd> best_exact;
    std::uint64_t enumerated = 0;  // candidates actually evaluated
    bool undecided_tie = false;
    std::vector<Vec3> tie_with;  // candidates not separable from best within budget
};

namespace detail {

// x >= y >= 0 decompositions of s as x^2 + y^2 with x <= xcap; calls fn(x,y).
template <typename Fn>
inline void two_square_reps(const BigInt& s, const BigInt& xcap, Fn&& fn) {
    if (s.sign() < 0) return;
    if (s.is_zero()) return;
    if (s % 4 == 3) return;  // sums of two squares are never 3 mod 4
    BigInt x = isqrt_floor(s);
    if (x > xcap) x = xcap;
    while (2 * x * x >= s) {
        BigInt y2 = s - x * x;
        BigInt y = isqrt_floor(y2);
        if (y * y == y2 && y <= x) fn(x, y);
        --x;
        if (x.sign() < 0) break;
    }
}

// Integer window [ceil(lo_bound), floor(hi_bound)] for s = x^2+y^2 so that
// |s - alpha z^2| <= slack is possible. Bounds are outward, so no candidate
// is missed; every hit is re-certified exactly afterwards.
struct WindowMaker {
    const TernaryForm& form;
    std::int64_t prec;
    Interval alpha_enc;

    WindowMaker(const TernaryForm& f, const BigInt& zmax, const BigRat& slack) : form(f) {
        std::int64_t zbits = 2 * bit_length(zmax) + 8;
        std::int64_t sbits = std::max<std::int64_t>(16, bit_length(denom(slack)) + 8);
        prec = zbits + sbits + 64;
        alpha_enc = form.alpha().eval(prec);
    }

    std::pair<BigInt, BigInt> window(const BigInt& z, const BigRat& slack) const {
        BigRat z2(z * z);
        BigRat lo = alpha_enc.lo().to_rational() * z2 - slack;
        BigRat hi = alpha_enc.hi().to_rational() * z2 + slack;
        return {ceil_div(numer(lo), denom(lo)), floor_div(numer(hi), denom(hi))};
    }
};

}  // namespace detail

// Exact (surd alpha) or certified-to-separation minimum of |Q(v)| over the
// punctured box 0 != ||v||_inf < N, enumerating the fundamental octant
// x >= y >= 0, z >= 0 and pruning each z-slice to the integer window
// [alpha z^2 - best, alpha z^2 + best]. The z-range may be partitioned across
// workers; the min/lex reduction is associative and deterministic.
inline OracleResult brute_force_min(const TernaryForm& form, const BigInt& N, unsigned workers = 1,
                                    const BigInt& hard_cap = BigInt(2000)) {
    if (N < 2) throw DomainError("oracle box bound must be at least 2");
    if (N > hard_cap) throw DomainError("oracle box bound exceeds configured cap");
    const bool exact = form.evaluate_exact(Vec3{1, 0, 0}).has_value();

    struct Best {
        Vec3 v;
        std::optional<Surd> val;      // exact Q(v)
        Interval enc;                 // enclosure of Q(v)
        Dyadic prune_hi;              // certified upper bound of |Q(v)|
        std::uint64_t count = 0;
        bool undecided = false;
        std::vector<Vec3> ties;
    };

    auto eval_enc = [&](const Vec3& v) {
        return form.evaluate(v, Dyadic::pow2(-96));
    };

    // strict comparison |Q(a)| vs |Q(b)|: -1, 0 (tie/undecided), +1
    auto cmp_abs = [&](const Vec3& a, const std::optional<Surd>& av, const Vec3& b,
                       const std::optional<Surd>& bv) -> int {
        if (exact) {
            Surd d = av->abs() - bv->abs();
            return d.sign();
        }
        for (std::int64_t prec = 96; prec <= form.budget().budget; prec *= 2) {
            Interval ia = Interval::abs(form.evaluate(a, Dyadic::pow2(-prec)));
            Interval ib = Interval::abs(form.evaluate(b, Dyadic::pow2(-prec)));
            int c = Interval::cmp(ia, ib);
            if (c != 0) return c;
        }
        return 0;
    };

    auto consider = [&](Best& st, const Vec3& v) {
        ++st.count;
        std::optional<Surd> val = form.evaluate_exact(v);
        int c = cmp_abs(v, val, st.v, st.val);
        if (c < 0) {
            st.v = v;
            st.val = val;
            st.enc = eval_enc(v);
            st.prune_hi = Interval::abs(st.enc).hi();
            st.ties.clear();
            st.undecided = false;
        } else if (c == 0) {
            if (exact) {
                if (lex_less(v, st.v)) st.v = v, st.val = val, st.enc = eval_enc(v);
            } else {
                st.undecided = true;
                st.ties.push_back(v);
            }
        }
    };

    auto run_range = [&](const BigInt& z_from, const BigInt& z_to) {
        Best st;
        st.v = Vec3{1, 0, 0};
        st.val = form.evaluate_exact(st.v);
        st.enc = eval_enc(st.v);
        st.prune_hi = Interval::abs(st.enc).hi();
        detail::WindowMaker wm(form, N, BigRat(1));
        BigInt xcap = N - 1;
        for (BigInt z = z_from; z < z_to; ++z) {
            BigRat slack = st.prune_hi.to_rational();
            auto [s_lo, s_hi] = wm.window(z, slack);
            if (s_lo.sign() < 0) s_lo = 0;
            for (BigInt s = s_lo; s <= s_hi; ++s) {
                if (s.is_zero()) {
                    continue;  // (0,0,z) is Q = -alpha z^2, caught only via window when slack large
                }
                detail::two_square_reps(s, xcap, [&](const BigInt& x, const BigInt& y) {
                    consider(st, Vec3{x, y, z});
                });
            }
            // (0,0,z) for z >= 1: Q = -alpha z^2; |Q| >= alpha > window logic; evaluate once
            if (z == 1) consider(st, Vec3{0, 0, 1});
        }
        return st;
    };

    // partition z-range deterministically
    if (workers == 0) workers = 1;
    std::vector<Best> parts;
    if (workers == 1) {
        parts.push_back(run_range(0, N));
    } else {
        std::vector<std::optional<Best>> slot(workers);
        std::vector<std::thread> ts;
        BigInt chunk = (N + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            BigInt from = BigInt(w) * chunk;
            BigInt to = from + chunk;
            if (to > N) to = N;
            if (from >= to) break;
            ts.emplace_back([&, w, from, to]() { slot[w] = run_range(from, to); });
        }
        for (auto& t : ts) t.join();
        for (auto& s : slot)
            if (s) parts.push_back(*s);
    }

    Best total = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        Best& p = parts[i];
        total.count += p.count;
        int c = cmp_abs(p.v, p.val, total.v, total.val);
        if (c < 0) {
            total.v = p.v;
            total.val = p.val;
            total.enc = p.enc;
            total.prune_hi = p.prune_hi;
            total.undecided = p.undecided;
            total.ties = p.ties;
        } else if (c == 0 && !(p.v == total.v)) {
            if (exact) {
                if (lex_less(p.v, total.v)) {
                    total.v = p.v;
                    total.val = p.val;
                    total.enc = p.enc;
                }
            } else {
                total.undecided = true;
                total.ties.push_back(p.v);
            }
        }
    }

    OracleResult res;
    res.N = N;
    res.best_v = total.v;
    res.best_value = total.enc;
    res.best_exact = total.val;
    res.enumerated = total.count;
    res.undecided_tie = total.undecided;
    res.tie_with = total.ties;
    return res;
}

struct SweepHit {
    Vec3 v;
    BigInt z_reached;
};

// Deterministic cone-neighborhood sweep: ascending z, candidate integers s in
// the exact window [alpha z^2 - eps, alpha z^2 + eps], two-square
// decomposition, exact certification. Returns the first certified solution.
// Expected cost is O(z) window checks plus O(eps * z * sqrt(z)) decompositions,
// so small epsilons stay cheap.
inline std::optional<SweepHit> sweep_first_below(const TernaryForm& form, const BigRat& eps,
                                                 const BigInt& z_cap) {
    detail::WindowMaker wm(form, z_cap, eps);
    for (BigInt z = 1; z <= z_cap; ++z) {
        auto [s_lo, s_hi] = wm.window(z, eps);
        if (s_lo.sign() < 0) s_lo = 0;
        for (BigInt s = s_lo; s <= s_hi; ++s) {
            std::optional<Vec3> found;
            detail::two_square_reps(s, /*xcap=*/s, [&](const BigInt& x, const BigInt& y) {
                if (!found) {
                    Vec3 v{x, y, z};
                    if (!v.is_zero() && form.certify_abs_leq(v, eps) == 1) found = v;
                }
            });
            if (found) return SweepHit{*found, z};
        }
    }
    return std::nullopt;
}

}  // namespace oppenheim
