// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "oppenheim/errors.hpp"
#include "oppenheim/interval.hpp"
#include "oppenheim/surd.hpp"

namespace oppenheim {

// Exponent schedule of the built-in Liouville constant sum(2^-s_k):
// s_1 = 64, s_{k+1} = (k+63) s_k. The ratios s_{k+1}/s_k grow without bound,
// so the irrationality measure is infinite, while early truncations stay
// desk-sized (q = 2^64 already serves every epsilon down to ~2^-120).
struct LiouvilleSchedule {
    static std::int64_t term(int k) {  // k >= 1
        std::int64_t s = 64;
        for (int j = 1; j < k; ++j) {
            if (s > (std::int64_t(1) << 40)) throw PrecisionExhausted("liouville exponent overflow", j);
            s *= (j + 63);
        }
        return s;
    }
};

// A described real number: the specification of how to evaluate it to any
// precision, plus enough structure for exact answers where they exist.
//
//   surd      exact p/q + (r/s) sqrt(d)
//   sqrt      square root of a positive described real
//   square    square of a described real
//   decimal   digit oracle: digits(n) returns a truncated decimal expansion
//             with at least n fractional digits
//   liouville the built-in Liouville constant
//
// Values are immutable and shareable across threads. Decimal oracles must be
// pure; their successive expansions are checked for digit agreement.
class RealSpec {
  public:
    using DigitFn = std::function<std::string(int)>;

  private:
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;
    struct SqrtNode {
        NodePtr inner;
    };
    struct SquareNode {
        NodePtr inner;
    };
    struct DecimalCache {
        std::mutex mu;
        std::string longest;
        std::string longest_int;
    };
    struct DecimalNode {
        DigitFn digits;
        std::string label;
        std::shared_ptr<DecimalCache> cache;
    };
    struct LiouvilleNode {};
    struct Node {
        std::variant<Surd, SqrtNode, SquareNode, DecimalNode, LiouvilleNode> v;
    };

    explicit RealSpec(NodePtr n) : node_(std::move(n)) {}
    template <typename T>
    static RealSpec make(T&& alt) {
        return RealSpec(std::make_shared<Node>(Node{std::forward<T>(alt)}));
    }

  public:
    RealSpec() : node_(std::make_shared<Node>(Node{Surd(BigRat(0))})) {}

    static RealSpec from_surd(const Surd& s) { return make(s); }
    static RealSpec from_rational(const BigRat& q) { return from_surd(Surd(q)); }
    // p/q + (r/s) sqrt(d)
    static RealSpec quadratic_surd(const BigInt& p, const BigInt& q, const BigInt& r, const BigInt& s,
                                   const BigInt& d) {
        if (q.sign() <= 0 || s.sign() <= 0) throw DomainError("surd denominators must be positive");
        return from_surd(Surd(BigRat(p, q), BigRat(r, s), d));
    }
    static RealSpec decimal_oracle(DigitFn digits, std::string label = "decimal") {
        return make(DecimalNode{std::move(digits), std::move(label), std::make_shared<DecimalCache>()});
    }
    static RealSpec liouville_constant() { return make(LiouvilleNode{}); }

    // sqrt of this value. Must be certainly nonnegative. Folds into the same
    // quadratic field when possible (e.g. sqrt(phi^2) = phi); collapses
    // sqrt(square(x)) back to x for the nonnegative x we evaluate.
    RealSpec sqrt() const {
        if (const Surd* s = std::get_if<Surd>(&node_->v)) {
            if (s->sign() < 0) throw DomainError("sqrt of negative value");
            Surd root;
            if (s->sqrt_in_field(&root)) return from_surd(root);
            if (s->is_rational()) {
                // sqrt(u/v) = sqrt(u v)/v stays an exact quadratic surd
                const BigRat& r = s->rational_part();
                return from_surd(Surd(BigRat(0), BigRat(BigInt(1), denom(r)), numer(r) * denom(r)));
            }
            return make(SqrtNode{node_});
        }
        if (const SquareNode* sq = std::get_if<SquareNode>(&node_->v)) return RealSpec(sq->inner);
        return make(SqrtNode{node_});
    }

    RealSpec square() const {
        if (const Surd* s = std::get_if<Surd>(&node_->v)) return from_surd(*s * *s);
        if (const SqrtNode* sq = std::get_if<SqrtNode>(&node_->v)) return RealSpec(sq->inner);
        return make(SquareNode{node_});
    }

    // Exact value when this spec is structurally a quadratic surd.
    std::optional<Surd> exact_surd() const {
        if (const Surd* s = std::get_if<Surd>(&node_->v)) return *s;
        return std::nullopt;
    }

    bool is_decimal_oracle() const { return std::holds_alternative<DecimalNode>(node_->v); }
    bool is_liouville_constant() const { return std::holds_alternative<LiouvilleNode>(node_->v); }

    // Exact irrationality check where the structure decides it. Decimal
    // oracles can never be certified irrational from finite data; that
    // responsibility stays with the caller (documented).
    bool certainly_irrational() const {
        if (const Surd* s = std::get_if<Surd>(&node_->v)) return !s->is_rational();
        if (const SqrtNode* sq = std::get_if<SqrtNode>(&node_->v)) {
            // construction simplified away in-field roots, so a sqrt node over
            // a surd (rational or not) is irrational; otherwise recurse
            RealSpec inner(sq->inner);
            if (inner.exact_surd()) return true;
            return inner.certainly_irrational();
        }
        if (std::holds_alternative<LiouvilleNode>(node_->v)) return true;
        return false;  // squares and decimal oracles: unknown
    }

    bool certainly_rational() const {
        if (const Surd* s = std::get_if<Surd>(&node_->v)) return s->is_rational();
        return false;
    }

    // Enclosure of the value; width <= 2^(1-precision) * max(1, |value|).
    Interval eval(std::int64_t precision) const {
        if (precision < 16) throw DomainError("precision must be at least 16 bits");
        Interval r = eval_raw(precision + 8);
        for (std::int64_t p = precision + 8;; p *= 2) {
            Dyadic bound = std::max(r.lo().abs(), std::max(r.hi().abs(), Dyadic(1)));
            if (Dyadic::cmp(r.width(), bound * Dyadic::pow2(1 - precision)) <= 0)
                return r;
            if (p > (std::int64_t(1) << 26))
                throw PrecisionExhausted("eval cannot reach requested width", precision);
            r = eval_raw(p * 2);
        }
    }

    // Escalate until the enclosure is narrower than `width` (absolute).
    Interval eval_to_width(const Dyadic& width,
                           const PrecisionBudget& pb = PrecisionBudget::defaults()) const {
        for (std::int64_t prec = pb.start; prec <= pb.budget; prec *= 2) {
            Interval r = eval_raw(prec);
            if (Dyadic::cmp(r.width(), width) <= 0) return r;
        }
        throw PrecisionExhausted("precision budget exhausted before reaching target width");
    }

    IntervalFn producer() const {
        RealSpec self = *this;
        return [self](std::int64_t prec) { return self.eval_raw(prec); };
    }

    std::string to_string() const {
        if (const Surd* s = std::get_if<Surd>(&node_->v)) return s->to_string();
        if (const SqrtNode* sq = std::get_if<SqrtNode>(&node_->v))
            return "sqrt(" + RealSpec(sq->inner).to_string() + ")";
        if (const SquareNode* sq = std::get_if<SquareNode>(&node_->v))
            return "(" + RealSpec(sq->inner).to_string() + ")^2";
        if (const DecimalNode* d = std::get_if<DecimalNode>(&node_->v)) return d->label;
        return "liouville";
    }

    // Liouville-constant structure, exposed for the Liouville solution path:
    // stage-k truncation (p, q = 2^(s_k)), with the certified tail bound
    // q*beta - p in (2^(s_k - s_{k+1}), 2^(s_k - s_{k+1} + 1)).
    static std::pair<BigInt, BigInt> liouville_truncation(int k) {
        std::int64_t sk = LiouvilleSchedule::term(k);
        BigInt p = 0;
        for (int j = 1; j <= k; ++j) p += BigInt(1) << static_cast<unsigned>(sk - LiouvilleSchedule::term(j));
        return {p, BigInt(1) << static_cast<unsigned>(sk)};
    }

  private:
    Interval eval_raw(std::int64_t prec) const {
        if (const Surd* s = std::get_if<Surd>(&node_->v)) return s->enclosure(prec);
        if (const SqrtNode* sq = std::get_if<SqrtNode>(&node_->v)) {
            Interval inner = RealSpec(sq->inner).eval_raw(prec + 4);
            if (inner.lo().sign() < 0) {
                if (inner.hi().sign() < 0) throw DomainError("sqrt of certainly negative value");
                inner = Interval(Dyadic(), inner.hi());  // value is >= 0 by construction
            }
            return Interval::sqrt(inner, prec);
        }
        if (const SquareNode* sq = std::get_if<SquareNode>(&node_->v))
            return Interval::square(RealSpec(sq->inner).eval_raw(prec + 4), prec);
        if (const DecimalNode* d = std::get_if<DecimalNode>(&node_->v)) return eval_decimal(*d, prec);
        return eval_liouville(prec);
    }

    static Interval eval_liouville(std::int64_t prec) {
        // lower bound: all terms with exponent <= P; tail < 2^-P since the
        // next exponent is at least P+1
        std::int64_t P = std::max<std::int64_t>(prec + 2, 80);
        BigInt lo_mant = 0;
        for (int k = 1;; ++k) {
            std::int64_t sk = LiouvilleSchedule::term(k);
            if (sk > P) break;
            lo_mant += BigInt(1) << static_cast<unsigned>(P - sk);
        }
        Dyadic lo(lo_mant, -P);
        return Interval(lo, lo + Dyadic::pow2(-P));
    }

    static Interval eval_decimal(const DecimalNode& d, std::int64_t prec) {
        int digits = static_cast<int>(prec * 30103 / 100000) + 4;
        std::string s = d.digits(digits);
        bool neg = false;
        std::size_t i = 0;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
        std::string ip, fp;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ip += s[i++];
        if (i < s.size() && s[i] == '.') {
            ++i;
            while (i < s.size() && s[i] >= '0' && s[i] <= '9') fp += s[i++];
        }
        if (i != s.size() || ip.empty()) throw ParseError("malformed decimal oracle output: " + s);
        if (neg) throw DomainError("decimal oracle values must be positive");
        if (static_cast<int>(fp.size()) < digits)
            throw OracleContradiction("decimal oracle returned fewer digits than requested");
        {
            std::lock_guard<std::mutex> lock(d.cache->mu);
            const std::string& prev = d.cache->longest;
            std::size_t n = std::min(prev.size(), fp.size());
            if (!d.cache->longest_int.empty() && d.cache->longest_int != ip)
                throw OracleContradiction("decimal oracle changed integer part");
            if (prev.compare(0, n, fp, 0, n) != 0)
                throw OracleContradiction("decimal oracle digits disagree with earlier call");
            if (fp.size() > prev.size()) d.cache->longest = fp;
            d.cache->longest_int = ip;
        }
        BigInt ival(ip);
        BigInt fval = fp.empty() ? BigInt(0) : BigInt(fp);
        BigInt den = pow_int(BigInt(10), static_cast<unsigned>(fp.size()));
        BigRat v = BigRat(ival) + BigRat(fval, den);
        BigRat hi = v + BigRat(BigInt(1), den);  // truncated expansion
        return Interval(Dyadic::from_rational(v, prec + 8, false),
                        Dyadic::from_rational(hi, prec + 8, true));
    }

    NodePtr node_;
};

// Compare two described reals with escalating precision; Less/Greater only on
// certified disjointness, Undecided when the budget runs out.
inline Ordering certified_compare(const RealSpec& x, const RealSpec& y,
                                  const PrecisionBudget& pb = PrecisionBudget::defaults()) {
    return certified_compare(x.producer(), y.producer(), pb);
}

}  // namespace oppenheim
