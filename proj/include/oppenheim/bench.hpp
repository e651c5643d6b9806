// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oppenheim/oracle.hpp"
#include "oppenheim/solver.hpp"
#include "oppenheim/watson.hpp"

namespace oppenheim {

// One row of the Watson effectiveness table: the solution norm is
// N = q_{n+1} and the product |W(v_n)| N^2 stays bounded (the F(N) << N^-2
// scaling at desk scale).
struct WatsonScalingRow {
    std::int64_t n;
    BigInt N;        // q_{n+1} = ||v_n||_inf
    Vec3 v;
    Surd value;      // exact W(v_n)
    Surd product;    // exact |W(v_n)| * N^2
    Interval value_enc;
    Interval product_enc;
};

struct WatsonScalingTable {
    BigInt a;
    std::vector<WatsonScalingRow> rows;
    Surd product_sup;  // max over rows of |W| N^2
    Interval product_sup_enc;
};

inline WatsonScalingTable watson_scaling(const BigInt& a, std::int64_t n_max) {
    if (n_max < 1 || n_max > 30) throw DomainError("watson scaling horizon must be in 1..30");
    WatsonScalingTable t;
    t.a = a;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        WatsonSolution ws = watson_solve(a, n);
        WatsonScalingRow row;
        row.n = n;
        row.N = ws.q_next;
        row.v = ws.v;
        row.value = ws.value;
        row.product = ws.value.abs() * BigRat(ws.q_next * ws.q_next);
        row.value_enc = row.value.enclosure(96);
        row.product_enc = row.product.enclosure(96);
        // monotone effectiveness: F(N) is nonincreasing, |W| strictly shrinks
        if (!t.rows.empty() && !(row.value.abs() < t.rows.back().value.abs()))
            throw DomainError("internal: watson values failed to decrease");
        t.rows.push_back(row);
    }
    t.product_sup = t.rows.front().product;
    for (const auto& r : t.rows)
        if (r.product > t.product_sup) t.product_sup = r.product;
    t.product_sup_enc = t.product_sup.enclosure(96);
    return t;
}

// Solver-vs-oracle comparison at one epsilon: the oracle minimum over the
// solver's own box never beats the solver's value from below (minimality),
// and the norm diagnostic tracks q_{2n}^(2/(theta+1)).
struct SolverOracleRow {
    BigRat epsilon;
    Solution sol;
    std::optional<OracleResult> oracle;  // absent when the box exceeded the cap
    bool oracle_capped = false;
    bool never_beats = false;  // |Q(v_solver)| >= F(||v||+1), certified
    std::optional<double> norm_ratio;    // log||v|| / log q_{2n}, generic path only
    std::optional<double> norm_exponent_bound;  // 2/(theta+1) + 0.25
};

struct SolverOracleReport {
    std::vector<SolverOracleRow> rows;
    bool partial = false;
};

inline SolverOracleReport solver_vs_oracle(const TernaryForm& form, const DiophantineProfile& profile,
                                           const std::vector<BigRat>& eps_list,
                                           const BigInt& oracle_cap = BigInt(2000),
                                           SolveOptions opts = SolveOptions{}) {
    SolverOracleReport rep;
    for (const BigRat& eps : eps_list) {
        if (eps.sign() <= 0 || eps >= 1) throw DomainError("epsilon must be in (0,1)");
        SolverOracleRow row;
        row.epsilon = eps;
        row.sol = solve(form, profile, eps, opts);
        BigInt box = row.sol.norm + 1;
        if (box > oracle_cap) {
            row.oracle_capped = true;
            rep.partial = true;
        } else {
            row.oracle = brute_force_min(form, box, 1, oracle_cap);
            // certified |Q(v_solver)| >= F(box)
            if (row.sol.value_exact && row.oracle->best_exact) {
                row.never_beats =
                    (row.sol.value_exact->abs() - row.oracle->best_exact->abs()).sign() >= 0;
            } else {
                Interval a = Interval::abs(row.sol.value);
                Interval b = Interval::abs(row.oracle->best_value);
                row.never_beats = !(a.hi() < b.lo());
            }
        }
        if (row.sol.path == Solution::Path::Generic && row.sol.n >= 0 && row.sol.norm > 1) {
            ContinuedFraction cf(form.beta(), form.budget());
            cf.extend_to(2 * row.sol.n);
            BigInt q2n = cf.q(2 * row.sol.n);
            if (q2n > 1) {
                row.norm_ratio = log2_approx(row.sol.norm) / log2_approx(q2n);
                BigRat bound = BigRat(2) / (profile.theta + 1) + BigRat(1, 4);
                row.norm_exponent_bound =
                    static_cast<double>(numer(bound).convert_to<long long>()) /
                    static_cast<double>(denom(bound).convert_to<long long>());
            }
        }
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace oppenheim
