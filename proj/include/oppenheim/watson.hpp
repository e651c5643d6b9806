// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "oppenheim/bigint.hpp"
#include "oppenheim/errors.hpp"
#include "oppenheim/form.hpp"
#include "oppenheim/surd.hpp"

namespace oppenheim {

// Watson's explicit construction for W(x,y,z) = x^2 - a alpha y^2 - alpha^2 z^2
// with alpha = [a; a, a, ...] = (a + sqrt(a^2+4))/2 the silver mean. The
// solutions are shifted convergent denominators v_n = (q_{n+1}, q_n, q_{n-1});
// everything stays exact in Q(sqrt(a^2+4)).

inline Surd silver_mean(const BigInt& a) {
    if (a.sign() <= 0) throw DomainError("silver mean parameter must be positive");
    return Surd(BigRat(a, 2), BigRat(1, 2), a * a + 4);
}

inline Surd silver_mean_conjugate(const BigInt& a) {
    return Surd(BigRat(a, 2), BigRat(-1, 2), a * a + 4);
}

// Denominators q_0 = 1, q_1 = a, q_{k+1} = a q_k + q_{k-1} (numerators obey
// p_k = q_{k+1}, which the tests exercise).
inline std::vector<BigInt> silver_denominators(const BigInt& a, std::int64_t upto) {
    std::vector<BigInt> q;
    q.reserve(static_cast<std::size_t>(upto + 1));
    q.push_back(1);
    if (upto >= 1) q.push_back(a);
    for (std::int64_t k = 2; k <= upto; ++k)
        q.push_back(a * q[static_cast<std::size_t>(k - 1)] + q[static_cast<std::size_t>(k - 2)]);
    return q;
}

inline Surd watson_value(const BigInt& a, const Vec3& v) {
    Surd alpha = silver_mean(a);
    Surd x2(BigRat(v.x * v.x));
    return x2 - alpha * BigRat(a * v.y * v.y) - (alpha * alpha) * BigRat(v.z * v.z);
}

struct WatsonSolution {
    Vec3 v;
    Surd value;      // exact W(v_n)
    Surd bound;      // exact (alpha + conj)/(q_n q_{n-1} B_n B_{n-1})
    Interval value_enc;
    Interval bound_enc;
    BigInt q_next;   // q_{n+1} = ||v||_inf, the effectiveness scale
};

// v_n = (q_{n+1}, q_n, q_{n-1}); certified |W(v_n)| <= (alpha+conj)/(q_n q_{n-1} B_n B_{n-1})
// with B_k = |conj - p_k/q_k|, all exact surd arithmetic. n >= 1 (q_{-1} is
// undefined under this indexing).
inline WatsonSolution watson_solve(const BigInt& a, std::int64_t n) {
    if (n < 1) throw IndexError("watson index must be >= 1");
    auto q = silver_denominators(a, n + 1);
    WatsonSolution ws;
    ws.v = Vec3{q[static_cast<std::size_t>(n + 1)], q[static_cast<std::size_t>(n)],
                q[static_cast<std::size_t>(n - 1)]};
    ws.q_next = q[static_cast<std::size_t>(n + 1)];
    ws.value = watson_value(a, ws.v);
    Surd conj = silver_mean_conjugate(a);
    // p_k = q_{k+1}
    Surd Bn = (conj - BigRat(q[static_cast<std::size_t>(n + 1)], q[static_cast<std::size_t>(n)])).abs();
    Surd Bn1 = (conj - BigRat(q[static_cast<std::size_t>(n)], q[static_cast<std::size_t>(n - 1)])).abs();
    Surd denom = Bn * Bn1 * BigRat(q[static_cast<std::size_t>(n)] * q[static_cast<std::size_t>(n - 1)]);
    ws.bound = Surd(BigRat(a)) / denom;  // alpha + conj = a
    if (!(ws.value.abs() <= ws.bound))
        throw DomainError("internal: watson bound certification failed");
    ws.value_enc = ws.value.enclosure(128);
    ws.bound_enc = ws.bound.enclosure(128);
    return ws;
}

}  // namespace oppenheim
