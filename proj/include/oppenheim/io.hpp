// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "oppenheim/bench.hpp"
#include "oppenheim/continued_fraction.hpp"
#include "oppenheim/equivalence.hpp"
#include "oppenheim/errors.hpp"
#include "oppenheim/probe.hpp"
#include "oppenheim/profile.hpp"
#include "oppenheim/real_spec.hpp"
#include "oppenheim/solver.hpp"

namespace oppenheim {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// input grammar
//
//   realspec := "liouville" | "decimal:" DIGITS "." DIGITS | surd-expr
//             | "sqrt(" realspec ")"
//   surd-expr: +,-,*,/ over integers and sqrt(<nonnegative integer surd-expr>),
//              folded exactly inside one quadratic field, e.g.
//              sqrt(2), (1+sqrt(5))/2, 3/2+sqrt(7)/5
//
//   rational := "p/q" | terminating decimal ("0.25", "1e-3", "2.5e-2")
// ---------------------------------------------------------------------------

inline BigRat parse_rational(const std::string& text) {
    std::size_t i = 0, n = text.size();
    auto fail = [&]() { throw ParseError("malformed rational: '" + text + "'"); };
    if (n == 0) fail();
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') neg = text[i++] == '-';
    std::string ip, fp, ep;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ip += text[i++];
    if (i < n && text[i] == '/') {
        // rational literal p/q
        ++i;
        std::string qs;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) qs += text[i++];
        if (i != n || ip.empty() || qs.empty()) fail();
        BigInt p(ip), q(qs);
        if (q.is_zero()) fail();
        BigRat r(p, q);
        return neg ? -r : r;
    }
    if (i < n && text[i] == '.') {
        ++i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) fp += text[i++];
    }
    if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        if (i < n && (text[i] == '+' || text[i] == '-')) ep += text[i++];
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ep += text[i++];
        if (ep.empty() || ep == "+" || ep == "-") fail();
    }
    if (i != n || (ip.empty() && fp.empty())) fail();
    BigInt mant(ip.empty() ? "0" : ip);
    BigInt den(1);
    for (char c : fp) {
        mant = mant * 10 + (c - '0');
        den *= 10;
    }
    BigRat r(mant, den);
    if (!ep.empty()) {
        long long e = std::stoll(ep);
        BigInt p10 = pow_int(BigInt(10), static_cast<unsigned>(e < 0 ? -e : e));
        if (e < 0)
            r /= BigRat(p10);
        else
            r *= BigRat(p10);
    }
    return neg ? -r : r;
}

namespace detail {

// Recursive-descent parser for the surd grammar. Arithmetic is folded
// exactly inside a single quadratic field; nested irrational radicals are
// only allowed as the outermost operation (sqrt(sqrt(2))).
class SpecParser {
  public:
    explicit SpecParser(const std::string& s) : s_(s) {}

    RealSpec parse() {
        skip();
        // outermost sqrt over a non-surd-foldable expression is permitted
        RealSpec r;
        try {
            r = parse_expr_as_spec();
        } catch (const ParseError&) {
            throw;
        } catch (const DomainError& e) {
            // e.g. mixed radicands: a grammar limitation, not a domain fault
            throw ParseError(std::string("unsupported real spec: ") + e.what());
        }
        skip();
        if (pos_ != s_.size()) throw ParseError("trailing input in real spec: '" + s_ + "'");
        return r;
    }

  private:
    RealSpec parse_expr_as_spec() {
        // try pure surd arithmetic first; on NestedRadical fall back to
        // sqrt(...) recursion at the outermost level
        std::size_t save = pos_;
        try {
            Surd v = expr();
            return RealSpec::from_surd(v);
        } catch (const NestedRadical&) {
            pos_ = save;
            skip();
            if (match_word("sqrt")) {
                expect('(');
                RealSpec inner = parse_expr_as_spec();
                expect(')');
                return inner.sqrt();
            }
            throw ParseError("unsupported nesting in real spec: '" + s_ + "'");
        }
    }

    struct NestedRadical {};

    Surd expr() {
        Surd v = term();
        for (;;) {
            skip();
            if (match('+'))
                v = v + term();
            else if (match('-'))
                v = v - term();
            else
                return v;
        }
    }

    Surd term() {
        Surd v = factor();
        for (;;) {
            skip();
            if (match('*')) {
                v = v * factor();
            } else if (match('/')) {
                Surd d = factor();
                if (d.is_zero()) throw ParseError("division by zero in real spec");
                v = v / d;
            } else {
                return v;
            }
        }
    }

    Surd factor() {
        skip();
        if (match('-')) return -factor();
        if (match('+')) return factor();
        if (match('(')) {
            Surd v = expr();
            expect(')');
            return v;
        }
        if (match_word("sqrt")) {
            expect('(');
            Surd inner = expr();
            expect(')');
            if (inner.sign() < 0) throw ParseError("sqrt of negative value in real spec");
            Surd root;
            if (inner.sqrt_in_field(&root)) return root;
            if (inner.is_rational()) {
                // sqrt(u/v) = sqrt(u v) / v
                const BigRat& r = inner.rational_part();
                return Surd(BigRat(0), BigRat(BigInt(1), denom(r)), numer(r) * denom(r));
            }
            throw NestedRadical{};  // irrational radicand: only valid outermost
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            std::string num;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) num += s_[pos_++];
            return Surd(BigRat(BigInt(num)));
        }
        throw ParseError("unexpected input in real spec at '" + s_.substr(pos_) + "'");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool match(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool match_word(const std::string& w) {
        skip();
        if (s_.compare(pos_, w.size(), w) == 0) {
            pos_ += w.size();
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!match(c)) throw ParseError(std::string("expected '") + c + "' in real spec");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline RealSpec parse_real_spec(const std::string& text) {
    if (text == "liouville") return RealSpec::liouville_constant();
    const std::string decimal_prefix = "decimal:";
    if (text.rfind(decimal_prefix, 0) == 0) {
        std::string lit = text.substr(decimal_prefix.size());
        // validate: digits '.' digits
        std::size_t dot = lit.find('.');
        if (dot == std::string::npos || dot == 0) throw ParseError("decimal spec needs 'int.frac' digits");
        for (std::size_t i = 0; i < lit.size(); ++i)
            if (i != dot && !std::isdigit(static_cast<unsigned char>(lit[i])))
                throw ParseError("decimal spec must be plain digits");
        std::string frac = lit.substr(dot + 1);
        std::string ip = lit.substr(0, dot);
        auto digits = [ip, frac](int k) -> std::string {
            if (k > static_cast<int>(frac.size()))
                throw PrecisionExhausted("decimal literal exhausted: need more digits than supplied",
                                         static_cast<std::int64_t>(frac.size()));
            return ip + "." + frac.substr(0, static_cast<std::size_t>(k));
        };
        return RealSpec::decimal_oracle(digits, text);
    }
    return detail::SpecParser(text).parse();
}

// ---------------------------------------------------------------------------
// JSON rendering. Big integers and exact rationals are decimal strings;
// interval endpoints are outward-rounded decimal strings (still enclosures).
// ---------------------------------------------------------------------------

inline std::string json_interval_lo(const Interval& i, int digits = 40) {
    return i.lo().to_decimal(digits, false);
}
inline std::string json_interval_hi(const Interval& i, int digits = 40) {
    return i.hi().to_decimal(digits, true);
}

inline Json profile_json(const DiophantineProfile& p) {
    Json j;
    j["mu"] = p.mu ? to_string(*p.mu) : "inf";
    j["sigma"] = to_string(p.sigma);
    j["theta"] = to_string(p.theta);
    j["eta"] = to_string(p.eta);
    j["C_horizon"] = p.c_lower.to_decimal(24, false);
    j["C_horizon_n"] = p.c_horizon;
    j["provenance"] = to_string(p.provenance);
    return j;
}

inline Json solution_json(const Solution& s) {
    Json j;
    j["v"] = {s.v.x.str(), s.v.y.str(), s.v.z.str()};
    j["value_lo"] = json_interval_lo(s.value);
    j["value_hi"] = json_interval_hi(s.value);
    if (s.value_exact) j["value_exact"] = s.value_exact->to_string();
    j["epsilon"] = to_string(s.epsilon);
    j["path"] = to_string(s.path);
    j["norm"] = s.norm.str();
    if (s.path == Solution::Path::Generic) {
        j["n"] = s.n;
        j["a"] = s.a.str();
        if (s.n1 >= 0) {
            j["n1"] = s.n1;
            j["within_n1"] = s.within_n1;
        }
        if (s.probe_cert) {
            Json c;
            c["N"] = s.probe_cert->N.str();
            c["p2n"] = s.probe_cert->p2n.str();
            c["q2n"] = s.probe_cert->q2n.str();
            c["u"] = {s.probe_cert->u.x.str(), s.probe_cert->u.y.str(), s.probe_cert->u.z.str()};
            c["I1"] = {s.probe_cert->I1_lo, s.probe_cert->I1_hi};
            c["I2"] = {s.probe_cert->I2_lo, s.probe_cert->I2_hi};
            c["M1"] = s.probe_cert->M1.str();
            c["M2"] = s.probe_cert->M2.str();
            j["probe"] = c;
        }
    }
    if (s.path == Solution::Path::Liouville) {
        j["p"] = s.lio_p.str();
        j["q"] = s.lio_q.str();
        j["n"] = s.lio_n;
    }
    if (s.path == Solution::Path::Sweep) j["sweep_z"] = s.sweep_z.str();
    if (s.path == Solution::Path::Reduced) {
        j["scale"] = s.reduce_scale.str();
        if (s.inner) j["inner"] = solution_json(*s.inner);
    }
    if (s.profile) j["profile"] = profile_json(*s.profile);
    return j;
}

inline Json cf_line_json(std::int64_t k, const BigInt& b, const Convergent& c) {
    Json j;
    j["n"] = k;
    j["b"] = b.str();
    j["p"] = c.p.str();
    j["q"] = c.q.str();
    j["e_lo"] = c.e_lo.to_decimal(40, false);
    j["e_hi"] = c.e_hi.to_decimal(40, true);
    return j;
}

inline Json oracle_json(const OracleResult& r) {
    Json j;
    j["N"] = r.N.str();
    j["best_v"] = {r.best_v.x.str(), r.best_v.y.str(), r.best_v.z.str()};
    j["best_lo"] = json_interval_lo(r.best_value);
    j["best_hi"] = json_interval_hi(r.best_value);
    if (r.best_exact) j["best_exact"] = r.best_exact->to_string();
    j["enumerated"] = r.enumerated;
    j["undecided_tie"] = r.undecided_tie;
    if (!r.tie_with.empty()) {
        Json ties = Json::array();
        for (const auto& t : r.tie_with) ties.push_back({t.x.str(), t.y.str(), t.z.str()});
        j["ties"] = ties;
    }
    return j;
}

inline Json dirichlet_gap_json(const DirichletGapReport& r) {
    Json j;
    j["N"] = r.N.str();
    j["u0"] = {r.u0.x.str(), r.u0.y.str(), r.u0.z.str()};
    j["Q_lo"] = json_interval_lo(r.Qu);
    j["Q_hi"] = json_interval_hi(r.Qu);
    if (r.Qu_exact) j["Q_exact"] = r.Qu_exact->to_string();
    j["upper_bound_lo"] = json_interval_lo(r.upper_bound);
    j["upper_bound_hi"] = json_interval_hi(r.upper_bound);
    j["upper_certified"] = r.upper_certified;
    j["C_horizon"] = r.c_horizon.to_decimal(24, false);
    j["lower_diag"] = r.lower_diag.to_decimal(24, false);
    if (r.eps) {
        j["epsilon"] = to_string(*r.eps);
        j["exceeds_epsilon"] = r.exceeds_eps;
    }
    return j;
}

inline Json watson_scaling_json(const WatsonScalingTable& t) {
    Json j;
    j["a"] = t.a.str();
    Json rows = Json::array();
    for (const auto& r : t.rows) {
        Json row;
        row["n"] = r.n;
        row["N"] = r.N.str();
        row["v"] = {r.v.x.str(), r.v.y.str(), r.v.z.str()};
        row["value_exact"] = r.value.to_string();
        row["value_lo"] = json_interval_lo(r.value_enc);
        row["value_hi"] = json_interval_hi(r.value_enc);
        row["product_lo"] = json_interval_lo(r.product_enc);
        row["product_hi"] = json_interval_hi(r.product_enc);
        rows.push_back(row);
    }
    j["rows"] = rows;
    j["product_sup"] = t.product_sup.to_string();
    j["product_sup_hi"] = json_interval_hi(t.product_sup_enc);
    return j;
}

inline Json solver_oracle_json(const SolverOracleReport& rep) {
    Json j;
    j["partial"] = rep.partial;
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
        Json row;
        row["epsilon"] = to_string(r.epsilon);
        row["solution"] = solution_json(r.sol);
        row["oracle_capped"] = r.oracle_capped;
        if (r.oracle) {
            row["oracle"] = oracle_json(*r.oracle);
            row["never_beats"] = r.never_beats;
        }
        if (r.norm_ratio) {
            row["norm_ratio"] = *r.norm_ratio;
            row["norm_exponent_bound"] = *r.norm_exponent_bound;
        }
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j;
}

// gamma as JSON: 3x3 array of exact rational strings.
inline RationalMatrix3 parse_matrix3(const std::string& text) {
    Json j = Json::parse(text, nullptr, true);
    if (!j.is_array() || j.size() != 3) throw ParseError("matrix must be a 3x3 JSON array");
    std::array<std::array<BigRat, 3>, 3> m;
    for (int i = 0; i < 3; ++i) {
        if (!j[static_cast<std::size_t>(i)].is_array() || j[static_cast<std::size_t>(i)].size() != 3)
            throw ParseError("matrix must be a 3x3 JSON array");
        for (int k = 0; k < 3; ++k) {
            const auto& cell = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            if (cell.is_number_integer())
                m[i][k] = BigRat(BigInt(cell.get<long long>()));
            else if (cell.is_string())
                m[i][k] = parse_rational(cell.get<std::string>());
            else
                throw ParseError("matrix entries must be integers or rational strings");
        }
    }
    return RationalMatrix3(m);
}

// h as JSON: {"A": 2x2 array, "h33": realspec string}.
inline HMatrix parse_hmatrix(const std::string& text) {
    Json j = Json::parse(text, nullptr, true);
    if (!j.is_object() || !j.contains("A") || !j.contains("h33"))
        throw ParseError("h matrix needs fields A (2x2) and h33 (real spec)");
    HMatrix h;
    const Json& A = j["A"];
    if (!A.is_array() || A.size() != 2) throw ParseError("A must be a 2x2 array");
    for (int i = 0; i < 2; ++i) {
        if (!A[static_cast<std::size_t>(i)].is_array() || A[static_cast<std::size_t>(i)].size() != 2)
            throw ParseError("A must be a 2x2 array");
        for (int k = 0; k < 2; ++k) {
            const auto& cell = A[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            if (cell.is_number_integer())
                h.A[i][k] = BigRat(BigInt(cell.get<long long>()));
            else if (cell.is_string())
                h.A[i][k] = parse_rational(cell.get<std::string>());
            else
                throw ParseError("A entries must be integers or rational strings");
        }
    }
    h.h33 = parse_real_spec(j["h33"].get<std::string>());
    return h;
}

}  // namespace oppenheim
