// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oppenheim/io.hpp"
#include "oppenheim/liouville.hpp"

namespace oppenheim {

// Exit classes: 0 success, 2 parse error, 3 domain error, 4 budget
// exhaustion. All output is deterministic: identical invocations produce
// identical bytes.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"constructive solver for |x^2 + y^2 - alpha z^2| <= eps"};
    app.require_subcommand(1);

    std::string opt_alpha, opt_beta, opt_eps, opt_sigma = "1/2", opt_mu, opt_matrix, opt_h;
    std::string opt_suite = "watson", opt_eps_list;
    std::int64_t opt_upto = 10, opt_n = 1, opt_nmax = -1, opt_N = 10, opt_budget = -1;
    std::int64_t opt_a = 1, opt_horizon = 10;
    unsigned opt_workers = std::thread::hardware_concurrency();
    bool opt_csv = false, opt_json = true, opt_no_sweep = false;
    std::string opt_sweep_cap;

    app.add_flag("--json", opt_json, "JSON output (default)");
    app.add_flag("--csv", opt_csv, "CSV output where applicable");
    app.add_option("--precision-budget", opt_budget,
                   "precision budget in bits (or env OPPENHEIM_PRECISION_BUDGET)");
    app.add_option("--workers", opt_workers, "oracle parallelism (default: hardware)");

    auto* c_solve = app.add_subcommand("solve", "construct v with |Q_alpha(v)| <= eps");
    c_solve->add_option("--alpha", opt_alpha, "form coefficient (real spec)")->required();
    c_solve->add_option("--epsilon", opt_eps, "tolerance, exact rational or terminating decimal")->required();
    c_solve->add_option("--sigma", opt_sigma, "profile sigma (default 1/2)");
    c_solve->add_option("--mu", opt_mu, "irrationality measure hint (>= 2)");
    c_solve->add_option("--n-max", opt_nmax, "probe ladder horizon (default n1+8)");
    c_solve->add_flag("--no-sweep", opt_no_sweep, "disable the cone sweep fallback");
    c_solve->add_option("--sweep-cap", opt_sweep_cap, "sweep z ceiling");

    auto* c_cf = app.add_subcommand("cf", "continued fraction expansion of beta");
    c_cf->add_option("--beta", opt_beta, "number to expand (real spec)")->required();
    c_cf->add_option("--upto", opt_upto, "last quotient index");

    auto* c_watson = app.add_subcommand("watson", "Watson silver-mean solution");
    c_watson->add_option("--a", opt_a, "silver mean parameter (positive integer)");
    c_watson->add_option("--n", opt_n, "solution index (>= 1)");

    auto* c_lio = app.add_subcommand("liouville", "Liouville-path solution for the built-in constant");
    c_lio->add_option("--epsilon", opt_eps, "tolerance")->required();

    auto* c_reduce = app.add_subcommand("reduce", "solve an SL(3,Q)- or H-equivalent form");
    c_reduce->add_option("--gamma", opt_matrix, "3x3 unimodular rational matrix (JSON)");
    c_reduce->add_option("--hmat", opt_h, "H matrix (JSON: {\"A\": 2x2, \"h33\": spec})");
    c_reduce->add_option("--alpha", opt_alpha, "alpha for the gamma route (real spec)");
    c_reduce->add_option("--epsilon", opt_eps, "tolerance")->required();
    c_reduce->add_option("--sigma", opt_sigma, "profile sigma (default 1/2)");

    auto* c_oracle = app.add_subcommand("oracle", "brute-force minimum of |Q| over a box");
    c_oracle->add_option("--alpha", opt_alpha, "form coefficient (real spec)")->required();
    c_oracle->add_option("--N", opt_N, "box bound: 0 != ||v||_inf < N");

    auto* c_bench = app.add_subcommand("bench", "scaling and solver-vs-oracle benchmarks");
    c_bench->add_option("--suite", opt_suite, "watson | solver");
    c_bench->add_option("--a", opt_a, "watson suite: silver mean parameter");
    c_bench->add_option("--n-max", opt_nmax, "watson suite: table depth");
    c_bench->add_option("--alpha", opt_alpha, "solver suite: form coefficient");
    c_bench->add_option("--epsilon-list", opt_eps_list, "solver suite: comma-separated tolerances");

    auto* c_diag = app.add_subcommand("diagnose", "Dirichlet-gap report at scale N");
    c_diag->add_option("--alpha", opt_alpha, "form coefficient (real spec)")->required();
    c_diag->add_option("--N", opt_N, "Dirichlet scale (>= 2)");
    c_diag->add_option("--epsilon", opt_eps, "also certify |Q(u0)| > epsilon");
    c_diag->add_option("--horizon", opt_horizon, "convergent horizon for the C estimate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        PrecisionBudget budget = PrecisionBudget::defaults();
        if (opt_budget > 0) budget.budget = opt_budget;

        auto make_profile = [&](const RealSpec& beta) {
            std::optional<BigRat> mu;
            if (!opt_mu.empty()) mu = parse_rational(opt_mu);
            ContinuedFraction cf(beta, budget);
            DiophantineProfile p = profile_for(beta, parse_rational(opt_sigma), mu, &cf);
            CEstimate ce = estimate_C(cf, p.theta, opt_horizon);
            p.c_lower = ce.lower;
            p.c_horizon = ce.horizon;
            return p;
        };

        if (*c_solve) {
            TernaryForm form(parse_real_spec(opt_alpha), budget);
            DiophantineProfile prof = make_profile(form.beta());
            SolveOptions opts;
            opts.n_max = opt_nmax;
            opts.enable_sweep = !opt_no_sweep;
            if (!opt_sweep_cap.empty()) opts.sweep_cap = BigInt(opt_sweep_cap);
            Solution s = solve(form, prof, parse_rational(opt_eps), opts);
            out << solution_json(s).dump() << "\n";
            return 0;
        }

        if (*c_cf) {
            RealSpec beta = parse_real_spec(opt_beta);
            ContinuedFraction cf(beta, budget);
            cf.extend_to(opt_upto + 1);
            for (std::int64_t k = 0; k <= opt_upto; ++k) {
                Convergent c = cf.convergent(k);
                if (opt_csv) {
                    out << k << "," << cf.quotient(k).str() << "," << c.p.str() << "," << c.q.str()
                        << "," << c.e_lo.to_decimal(40, false) << "," << c.e_hi.to_decimal(40, true)
                        << "\n";
                } else {
                    out << cf_line_json(k, cf.quotient(k), c).dump() << "\n";
                }
            }
            return 0;
        }

        if (*c_watson) {
            WatsonSolution ws = watson_solve(BigInt(opt_a), opt_n);
            Json j;
            j["a"] = opt_a;
            j["n"] = opt_n;
            j["v"] = {ws.v.x.str(), ws.v.y.str(), ws.v.z.str()};
            j["value_exact"] = ws.value.to_string();
            j["value_lo"] = json_interval_lo(ws.value_enc);
            j["value_hi"] = json_interval_hi(ws.value_enc);
            j["bound_exact"] = ws.bound.to_string();
            j["bound_hi"] = json_interval_hi(ws.bound_enc);
            out << j.dump() << "\n";
            return 0;
        }

        if (*c_lio) {
            RealSpec beta = RealSpec::liouville_constant();
            Solution s = liouville_solve(beta, liouville_constant_generator(), parse_rational(opt_eps),
                                         budget);
            out << solution_json(s).dump() << "\n";
            return 0;
        }

        if (*c_reduce) {
            BigRat eps = parse_rational(opt_eps);
            RealSpec alpha;
            RationalMatrix3 gamma;
            if (!opt_h.empty()) {
                HMatrix h = parse_hmatrix(opt_h);
                auto [al, ga] = factor_h(h);
                alpha = al;
                gamma = ga;
            } else if (!opt_matrix.empty() && !opt_alpha.empty()) {
                gamma = parse_matrix3(opt_matrix);
                alpha = parse_real_spec(opt_alpha);
            } else {
                throw ParseError("reduce needs either --hmat or both --gamma and --alpha");
            }
            TernaryForm form(alpha, budget);
            DiophantineProfile prof = make_profile(form.beta());
            Solution s = reduce_sl3q(gamma, alpha, eps, prof, SolveOptions{}, budget);
            out << solution_json(s).dump() << "\n";
            return 0;
        }

        if (*c_oracle) {
            TernaryForm form(parse_real_spec(opt_alpha), budget);
            OracleResult r = brute_force_min(form, BigInt(opt_N), opt_workers == 0 ? 1 : opt_workers);
            if (opt_csv) {
                out << "N,x,y,z,best_lo,best_hi,enumerated\n";
                out << r.N.str() << "," << r.best_v.x.str() << "," << r.best_v.y.str() << ","
                    << r.best_v.z.str() << "," << json_interval_lo(r.best_value) << ","
                    << json_interval_hi(r.best_value) << "," << r.enumerated << "\n";
            } else {
                out << oracle_json(r).dump() << "\n";
            }
            return 0;
        }

        if (*c_bench) {
            if (opt_suite == "watson") {
                std::int64_t depth = opt_nmax > 0 ? opt_nmax : 20;
                WatsonScalingTable t = watson_scaling(BigInt(opt_a), depth);
                if (opt_csv) {
                    out << "n,N,value_lo,value_hi,product_lo,product_hi\n";
                    for (const auto& r : t.rows)
                        out << r.n << "," << r.N.str() << "," << json_interval_lo(r.value_enc) << ","
                            << json_interval_hi(r.value_enc) << "," << json_interval_lo(r.product_enc)
                            << "," << json_interval_hi(r.product_enc) << "\n";
                } else {
                    out << watson_scaling_json(t).dump() << "\n";
                }
                return 0;
            }
            if (opt_suite == "solver") {
                if (opt_alpha.empty() || opt_eps_list.empty())
                    throw ParseError("solver suite needs --alpha and --epsilon-list");
                TernaryForm form(parse_real_spec(opt_alpha), budget);
                DiophantineProfile prof = make_profile(form.beta());
                std::vector<BigRat> eps_list;
                std::stringstream ss(opt_eps_list);
                std::string tok;
                while (std::getline(ss, tok, ',')) eps_list.push_back(parse_rational(tok));
                SolverOracleReport rep = solver_vs_oracle(form, prof, eps_list, BigInt(100000));
                out << solver_oracle_json(rep).dump() << "\n";
                return 0;
            }
            throw ParseError("unknown bench suite: " + opt_suite);
        }

        if (*c_diag) {
            TernaryForm form(parse_real_spec(opt_alpha), budget);
            DiophantineProfile prof = make_profile(form.beta());
            ContinuedFraction cf(form.beta(), budget);
            std::optional<BigRat> eps;
            if (!opt_eps.empty()) eps = parse_rational(opt_eps);
            DirichletGapReport rep = dirichlet_gap(form, cf, prof, BigInt(opt_N), eps, opt_horizon);
            out << dirichlet_gap_json(rep).dump() << "\n";
            return 0;
        }

        err << "no subcommand\n";
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const PrecisionExhausted& e) {
        err << "budget exhausted: " << e.what() << "\n";
        return 4;
    } catch (const NoSolutionWithinHorizon& e) {
        err << "budget exhausted: " << e.what() << "\n";
        return 4;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace oppenheim
