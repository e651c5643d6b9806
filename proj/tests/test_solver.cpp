// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "oppenheim/oracle.hpp"
#include "oppenheim/solver.hpp"
#include "test_support.hpp"

using namespace oppenheim;
using namespace testsupport;

namespace {
DiophantineProfile default_profile() {
    return DiophantineProfile::from_mu_sigma(BigRat(2), BigRat(1, 2), ProfileProvenance::DefaultQuadratic);
}
}  // namespace

TEST_CASE("solve sqrt2 at eps 1e-2: certified nonzero solution") {
    TernaryForm form(RealSpec::quadratic_surd(0, 1, 1, 1, 2));
    Solution s = solve(form, default_profile(), BigRat(1, 100));
    CHECK_FALSE(s.v.is_zero());
    REQUIRE(s.value_exact.has_value());
    CHECK(s.value_exact->abs().cmp_rational(BigRat(1, 100)) <= 0);
    // independent 300-digit style re-verification through the decimal bracket
    auto [lo, hi] = decimal_bracket(kSqrt2Digits);
    BigInt ss = s.v.x * s.v.x + s.v.y * s.v.y;
    BigInt z2 = s.v.z * s.v.z;
    BigRat vlo = BigRat(ss) - hi * BigRat(z2), vhi = BigRat(ss) - lo * BigRat(z2);
    CHECK(abs(vlo) <= BigRat(1, 100));
    CHECK(abs(vhi) <= BigRat(1, 100));
    // the brute-force oracle confirms solutions at this tolerance exist in a
    // small box (the ladder's n=1 hit has norm 861)
    CHECK(s.norm <= 2000);
}

TEST_CASE("solve phi at eps 1/2: (1,1,1) qualifies and output certifies") {
    TernaryForm form(RealSpec::quadratic_surd(1, 2, 1, 2, 5));
    // |Q(1,1,1)| = |2 - phi| = 0.381966... <= 1/2
    CHECK(form.evaluate_exact(Vec3{1, 1, 1})->abs().cmp_rational(BigRat(1, 2)) <= 0);
    Solution s = solve(form, default_profile(), BigRat(1, 2));
    CHECK_FALSE(s.v.is_zero());
    CHECK(s.value_exact->abs().cmp_rational(BigRat(1, 2)) <= 0);
    // brute-force oracle over a box covering the returned norm agrees that a
    // solution of this quality exists
    OracleResult best = brute_force_min(form, BigInt(4));
    CHECK(best.best_exact->abs().cmp_rational(BigRat(1, 2)) <= 0);
}

TEST_CASE("solve with eps >= 1 returns a certified vector") {
    TernaryForm form(RealSpec::quadratic_surd(0, 1, 1, 1, 2));
    Solution s = solve(form, default_profile(), BigRat(1));
    CHECK_FALSE(s.v.is_zero());
    CHECK(s.value_exact->abs().cmp_rational(BigRat(1)) <= 0);
}

TEST_CASE("ladder solutions come with replayable probe certificates") {
    TernaryForm form(RealSpec::quadratic_surd(0, 1, 1, 1, 2));
    Solution s = solve(form, default_profile(), BigRat(1, 10));
    if (s.path == Solution::Path::Generic && !s.a.is_zero()) {
        REQUIRE(s.probe_cert.has_value());
        // replay: v = (x - a p, -a, z - a q)
        const ProbeCertificate& c = *s.probe_cert;
        CHECK(s.v.x == c.u.x - s.a * c.p2n);
        CHECK(s.v.y == -s.a);
        CHECK(s.v.z == c.u.z - s.a * c.q2n);
        CHECK(s.n1 > 0);
    }
}

TEST_CASE("solution soundness: random surd forms at modest eps") {
    SurdGen gen(0xbead);
    int solved = 0;
    for (int trial = 0; trial < 10; ++trial) {
        Surd alpha = gen.next(true);
        if (alpha.cmp_rational(BigRat(1, 20)) <= 0 || alpha.cmp_rational(BigRat(400)) >= 0) continue;
        TernaryForm form(RealSpec::from_surd(alpha));
        BigRat eps(1, 4);
        Solution s = solve(form, default_profile(), eps);
        CHECK_FALSE(s.v.is_zero());
        REQUIRE(s.value_exact.has_value());
        CHECK(s.value_exact->abs().cmp_rational(eps) <= 0);
        // the enclosure agrees with the exact value
        Interval enc = s.value_exact->enclosure(200);
        CHECK(Interval::cmp(s.value, enc) == 0);
        ++solved;
    }
    CHECK(solved >= 5);
}

TEST_CASE("sweep fallback engages for small eps and stays certified") {
    TernaryForm form(RealSpec::quadratic_surd(0, 1, 1, 1, 2));
    SolveOptions opts;
    opts.n_max = 6;  // force an early ladder exit
    Solution s = solve(form, default_profile(), BigRat(1, 1000), opts);
    CHECK(s.path == Solution::Path::Sweep);
    CHECK(s.value_exact->abs().cmp_rational(BigRat(1, 1000)) <= 0);
    CHECK(s.v.z == s.sweep_z);
}

TEST_CASE("sweep disabled: horizon exhaustion is an error, not a wrong answer") {
    TernaryForm form(RealSpec::quadratic_surd(0, 1, 1, 1, 2));
    SolveOptions opts;
    opts.n_max = 3;
    opts.enable_sweep = false;
    CHECK_THROWS_AS(solve(form, default_profile(), BigRat(1, 100000), opts), NoSolutionWithinHorizon);
}

TEST_CASE("solve rejects nonpositive eps") {
    TernaryForm form(RealSpec::quadratic_surd(0, 1, 1, 1, 2));
    CHECK_THROWS_AS(solve(form, default_profile(), BigRat(0)), DomainError);
    CHECK_THROWS_AS(solve(form, default_profile(), BigRat(-1, 10)), DomainError);
}
