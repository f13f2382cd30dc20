#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rank2/bigint.hpp"

namespace rank2 {

/// Exponent pair (d1, d2) of the monomial x1^d1 x2^d2. Ordered lexicographically.
struct Exponent {
    std::int64_t d1 = 0;
    std::int64_t d2 = 0;
    auto operator<=>(const Exponent&) const = default;
    Exponent operator+(Exponent o) const { return {d1 + o.d1, d2 + o.d2}; }
    Exponent operator-(Exponent o) const { return {d1 - o.d1, d2 - o.d2}; }
};

/// Thrown by exact division when the divisor does not divide the dividend.
/// Carries one nonzero term of the remainder.
class InexactQuotient : public std::runtime_error {
public:
    InexactQuotient(Exponent where, BigInt coeff)
        : std::runtime_error("inexact quotient: remainder term " + coeff.str() + "*x1^" +
                             std::to_string(where.d1) + "*x2^" + std::to_string(where.d2)),
          where_(where),
          coeff_(std::move(coeff)) {}

    Exponent where() const noexcept { return where_; }
    const BigInt& coeff() const noexcept { return coeff_; }

private:
    Exponent where_;
    BigInt coeff_;
};

class DivisionByZero : public std::domain_error {
public:
    DivisionByZero() : std::domain_error("division by the zero Laurent polynomial") {}
};

/*
 * Sparse Laurent polynomial in x1, x2 over the integers. Terms are kept in a
 * map ordered by (d1, d2) ascending; no stored coefficient is zero.
 */
class LaurentPoly2 {
public:
    using Terms = std::map<Exponent, BigInt>;

    LaurentPoly2() = default;

    static LaurentPoly2 constant(const BigInt& v) { return monomial({0, 0}, v); }

    static LaurentPoly2 monomial(Exponent e, const BigInt& coeff = BigInt(1)) {
        LaurentPoly2 p;
        if (!coeff.is_zero()) p.terms_.emplace(e, coeff);
        return p;
    }

    static LaurentPoly2 x1(std::int64_t power = 1) { return monomial({power, 0}); }
    static LaurentPoly2 x2(std::int64_t power = 1) { return monomial({0, power}); }

    static LaurentPoly2 from_terms(std::initializer_list<std::pair<Exponent, std::int64_t>> terms) {
        LaurentPoly2 p;
        for (const auto& [e, v] : terms) p.add_term(e, BigInt(v));
        return p;
    }

    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Adds coeff * x^e, dropping the entry if it cancels.
    void add_term(Exponent e, const BigInt& coeff) {
        if (coeff.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    BigInt coeff(std::int64_t d1, std::int64_t d2) const {
        auto it = terms_.find({d1, d2});
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    std::vector<Exponent> support() const {
        std::vector<Exponent> out;
        out.reserve(terms_.size());
        for (const auto& kv : terms_) out.push_back(kv.first);
        return out;
    }

    /// Componentwise minimum exponent; nullopt for the zero polynomial.
    std::optional<Exponent> min_exponents() const {
        if (terms_.empty()) return std::nullopt;
        Exponent m = terms_.begin()->first;
        for (const auto& kv : terms_) m.d2 = std::min(m.d2, kv.first.d2);
        return m;
    }

    std::optional<Exponent> max_exponents() const {
        if (terms_.empty()) return std::nullopt;
        Exponent m = terms_.rbegin()->first;
        for (const auto& kv : terms_) m.d2 = std::max(m.d2, kv.first.d2);
        return m;
    }

    /// Multiplies by the monomial x^shift.
    LaurentPoly2 shifted(Exponent shift) const {
        LaurentPoly2 r;
        for (const auto& [e, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), e + shift, v);
        return r;
    }

    bool operator==(const LaurentPoly2&) const = default;

    LaurentPoly2& operator+=(const LaurentPoly2& o) {
        for (const auto& [e, v] : o.terms_) add_term(e, v);
        return *this;
    }

    LaurentPoly2& operator-=(const LaurentPoly2& o) {
        for (const auto& [e, v] : o.terms_) add_term(e, -v);
        return *this;
    }

    LaurentPoly2 operator-() const {
        LaurentPoly2 r = *this;
        for (auto& kv : r.terms_) kv.second = -kv.second;
        return r;
    }

    friend LaurentPoly2 operator+(LaurentPoly2 a, const LaurentPoly2& b) { return a += b; }
    friend LaurentPoly2 operator-(LaurentPoly2 a, const LaurentPoly2& b) { return a -= b; }
    friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b);

private:
    Terms terms_;
};

namespace detail {

// Products whose bounding box is at most this many cells (and not too sparse)
// accumulate into a dense buffer instead of the ordered map.
inline constexpr std::int64_t kDenseCellLimit = std::int64_t{1} << 23;

inline LaurentPoly2 multiply_dense(const LaurentPoly2& a, const LaurentPoly2& b, Exponent lo, Exponent hi) {
    const std::int64_t w2 = hi.d2 - lo.d2 + 1;
    const std::int64_t cells = (hi.d1 - lo.d1 + 1) * w2;
    std::vector<BigInt> acc(static_cast<std::size_t>(cells));
    for (const auto& [ea, va] : a.terms()) {
        for (const auto& [eb, vb] : b.terms()) {
            const auto idx = (ea.d1 + eb.d1 - lo.d1) * w2 + (ea.d2 + eb.d2 - lo.d2);
            acc[static_cast<std::size_t>(idx)] += va * vb;
        }
    }
    LaurentPoly2 r;
    for (std::int64_t idx = 0; idx < cells; ++idx) {
        auto& v = acc[static_cast<std::size_t>(idx)];
        if (!v.is_zero()) r.add_term({lo.d1 + idx / w2, lo.d2 + idx % w2}, v);
    }
    return r;
}

}  // namespace detail

inline LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const Exponent lo = *a.min_exponents() + *b.min_exponents();
    const Exponent hi = *a.max_exponents() + *b.max_exponents();
    const std::int64_t cells = (hi.d1 - lo.d1 + 1) * (hi.d2 - lo.d2 + 1);
    const auto pairs = static_cast<std::int64_t>(a.size()) * static_cast<std::int64_t>(b.size());
    if (cells <= detail::kDenseCellLimit && cells <= 64 * pairs + 4096)
        return detail::multiply_dense(a, b, lo, hi);
    LaurentPoly2 r;
    for (const auto& [ea, va] : a.terms())
        for (const auto& [eb, vb] : b.terms()) r.add_term(ea + eb, va * vb);
    return r;
}

inline LaurentPoly2 lp_add(const LaurentPoly2& p, const LaurentPoly2& q) { return p + q; }
inline LaurentPoly2 lp_mul(const LaurentPoly2& p, const LaurentPoly2& q) { return p * q; }

inline LaurentPoly2 lp_pow(const LaurentPoly2& p, std::int64_t k) {
    if (k < 0) throw DomainError("lp_pow: negative exponent " + std::to_string(k));
    LaurentPoly2 result = LaurentPoly2::constant(BigInt(1));
    LaurentPoly2 base = p;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

namespace detail {

// Dense univariate polynomial in x1 with coefficient i at x1^i. Empty means zero.
using Row = std::vector<BigInt>;

inline void trim(Row& r) {
    while (!r.empty() && r.back().is_zero()) r.pop_back();
}

// Exact quotient of num by den in Z[x1]. On failure reports the x1-degree and
// value of a remainder coefficient.
inline bool divide_row(Row num, const Row& den, Row& quot, std::int64_t& bad_deg, BigInt& bad_val) {
    trim(num);
    quot.clear();
    const auto dd = static_cast<std::int64_t>(den.size()) - 1;
    if (num.empty()) return true;
    const auto nd = static_cast<std::int64_t>(num.size()) - 1;
    if (nd < dd) {
        bad_deg = nd;
        bad_val = num.back();
        return false;
    }
    quot.assign(static_cast<std::size_t>(nd - dd + 1), BigInt(0));
    const BigInt& lead = den.back();
    BigInt q, r;
    for (std::int64_t k = nd; k >= dd; --k) {
        auto& top = num[static_cast<std::size_t>(k)];
        if (top.is_zero()) continue;
        boost::multiprecision::divide_qr(top, lead, q, r);
        if (!r.is_zero()) {
            bad_deg = k;
            bad_val = top;
            return false;
        }
        const auto shift = k - dd;
        for (std::int64_t i = 0; i <= dd; ++i) {
            const auto& d = den[static_cast<std::size_t>(i)];
            if (!d.is_zero()) num[static_cast<std::size_t>(shift + i)] -= q * d;
        }
        quot[static_cast<std::size_t>(shift)] = q;
    }
    for (std::int64_t k = dd - 1; k >= 0; --k) {
        if (!num[static_cast<std::size_t>(k)].is_zero()) {
            bad_deg = k;
            bad_val = num[static_cast<std::size_t>(k)];
            return false;
        }
    }
    trim(quot);
    return true;
}

inline void sub_product(Row& acc, const Row& a, const Row& b) {
    if (a.empty() || b.empty()) return;
    if (acc.size() < a.size() + b.size() - 1) acc.resize(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) acc[i + j] -= a[i] * b[j];
    }
}

// Rows indexed by x2-degree of a polynomial shifted so its minimum exponents are zero.
inline std::vector<Row> to_rows(const LaurentPoly2& p, Exponent lo) {
    const Exponent hi = *p.max_exponents();
    std::vector<Row> rows(static_cast<std::size_t>(hi.d2 - lo.d2 + 1));
    for (const auto& [e, v] : p.terms()) {
        auto& row = rows[static_cast<std::size_t>(e.d2 - lo.d2)];
        const auto i = static_cast<std::size_t>(e.d1 - lo.d1);
        if (row.size() <= i) row.resize(i + 1);
        row[i] = v;
    }
    return rows;
}

}  // namespace detail

/*
 * Exact quotient p / q in the Laurent ring. Both operands are shifted into
 * ordinary polynomials and divided as polynomials in x2 with coefficients in
 * Z[x1]; a nonzero remainder raises InexactQuotient instead of being dropped.
 */
inline LaurentPoly2 lp_exact_div(const LaurentPoly2& p, const LaurentPoly2& q) {
    if (q.is_zero()) throw DivisionByZero();
    if (p.is_zero()) return {};
    const Exponent plo = *p.min_exponents();
    const Exponent qlo = *q.min_exponents();
    const Exponent offset = plo - qlo;

    auto rem = detail::to_rows(p, plo);
    const auto den = detail::to_rows(q, qlo);
    const auto dd = static_cast<std::int64_t>(den.size()) - 1;
    const auto nd = static_cast<std::int64_t>(rem.size()) - 1;

    auto fail = [&](std::int64_t d1, std::int64_t d2, const BigInt& v) -> InexactQuotient {
        return InexactQuotient({d1 + plo.d1, d2 + plo.d2}, v);
    };

    LaurentPoly2 result;
    detail::Row quot;
    std::int64_t bad_deg = 0;
    BigInt bad_val;
    for (std::int64_t k = nd; k >= dd; --k) {
        auto& row = rem[static_cast<std::size_t>(k)];
        detail::trim(row);
        if (row.empty()) continue;
        if (!detail::divide_row(row, den.back(), quot, bad_deg, bad_val)) throw fail(bad_deg, k, bad_val);
        const auto shift = k - dd;
        for (std::int64_t i = 0; i <= dd; ++i)
            detail::sub_product(rem[static_cast<std::size_t>(shift + i)], quot, den[static_cast<std::size_t>(i)]);
        for (std::size_t i = 0; i < quot.size(); ++i)
            if (!quot[i].is_zero())
                result.add_term({static_cast<std::int64_t>(i) + offset.d1, shift + offset.d2}, quot[i]);
    }
    for (std::int64_t k = std::min(dd - 1, nd); k >= 0; --k) {
        const auto& row = rem[static_cast<std::size_t>(k)];
        for (std::size_t i = row.size(); i-- > 0;)
            if (!row[i].is_zero()) throw fail(static_cast<std::int64_t>(i), k, row[i]);
    }
    return result;
}

/// Exact value at (u1, u2); a zero substituted into a negative power is an error.
inline Rational lp_eval_int(const LaurentPoly2& p, std::int64_t u1, std::int64_t u2) {
    Rational total(0);
    auto power = [](std::int64_t base, std::int64_t e) {
        Rational b(base);
        if (e < 0) {
            if (base == 0) throw DomainError("lp_eval_int: zero raised to a negative power");
            b = Rational(1) / b;
            e = -e;
        }
        Rational r(1);
        for (; e > 0; e >>= 1) {
            if (e & 1) r *= b;
            b *= b;
        }
        return r;
    };
    for (const auto& [e, v] : p.terms()) total += Rational(v) * power(u1, e.d1) * power(u2, e.d2);
    return total;
}

inline BigInt lp_coeff(const LaurentPoly2& p, std::int64_t d1, std::int64_t d2) { return p.coeff(d1, d2); }
inline std::vector<Exponent> lp_support(const LaurentPoly2& p) { return p.support(); }

}  // namespace rank2
