#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rank2/bigint.hpp"
#include "rank2/combinat.hpp"
#include "rank2/laurent.hpp"

namespace rank2 {

/// The Laurent expansion is not of the shape the coordinate change expects.
class StructuralInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Sub-dimension vector (e1, e2) keyed map of Euler characteristics.
using ChiEntries = std::map<std::pair<std::int64_t, std::int64_t>, BigInt>;

/// Euler characteristics chi(Gr_(e1,e2)(M(n))) for fixed (c, n).
struct ChiTable {
    std::int64_t c = 0;
    std::int64_t n = 0;
    DimVector dim;  // (a_{n-1}, a_{n-2})
    ChiEntries entries;

    BigInt at(std::int64_t e1, std::int64_t e2) const {
        auto it = entries.find({e1, e2});
        return it == entries.end() ? BigInt(0) : it->second;
    }

    BigInt total() const {
        BigInt sum(0);
        for (const auto& kv : entries) sum += kv.second;
        return sum;
    }

    bool operator==(const ChiTable&) const = default;
};

inline void require_cluster_args(const ClusterContext& ctx, std::int64_t n, std::int64_t min_n, const char* what) {
    if (ctx.c() < 2) throw DomainError(std::string(what) + ": requires c >= 2, got c = " + std::to_string(ctx.c()));
    if (n < min_n)
        throw DomainError(std::string(what) + ": requires n >= " + std::to_string(min_n) + ", got n = " +
                          std::to_string(n));
}

/*
 * Cluster variables by x_{k+1} = (x_k^c + 1) / x_{k-1}, starting from x_1, x_2.
 * Each division goes through lp_exact_div, so a failure of the Laurent
 * phenomenon would surface as InexactQuotient.
 *
 * The memo grows on demand; call warm_up() before sharing an instance
 * between threads, after which variable() only reads.
 */
class RecurrenceOracle {
public:
    explicit RecurrenceOracle(const ClusterContext& ctx) : ctx_(ctx) {
        if (ctx.c() < 2) throw DomainError("recurrence: requires c >= 2, got c = " + std::to_string(ctx.c()));
        vars_.push_back(LaurentPoly2::x1());
        vars_.push_back(LaurentPoly2::x2());
    }

    const ClusterContext& context() const noexcept { return ctx_; }

    void warm_up(std::int64_t n) {
        const LaurentPoly2 one = LaurentPoly2::constant(BigInt(1));
        while (static_cast<std::int64_t>(vars_.size()) < n) {
            const auto& cur = vars_.back();
            const auto& prev = vars_[vars_.size() - 2];
            vars_.push_back(lp_exact_div(lp_pow(cur, ctx_.c()) + one, prev));
        }
    }

    const LaurentPoly2& variable(std::int64_t n) {
        require_cluster_args(ctx_, n, 1, "cluster_var_recurrence");
        warm_up(n);
        return vars_[static_cast<std::size_t>(n - 1)];
    }

private:
    const ClusterContext& ctx_;
    std::vector<LaurentPoly2> vars_;
};

inline LaurentPoly2 cluster_var_recurrence(const ClusterContext& ctx, std::int64_t n) {
    RecurrenceOracle oracle(ctx);
    return oracle.variable(n);
}

/*
 * Reads Euler characteristics off x_n through
 *   x_n = x1^{-a_{n-1}} x2^{-a_{n-2}} sum chi(e1,e2) x1^{c(a_{n-2}-e2)} x2^{c e1},
 * i.e. d2 = c e1 - a_{n-2} and d1 = c (a_{n-2} - e2) - a_{n-1}.
 */
inline ChiTable chi_table_from_expansion(const ClusterContext& ctx, std::int64_t n, const LaurentPoly2& xn) {
    require_cluster_args(ctx, n, 3, "chi_from_expansion");
    const std::int64_t c = ctx.c();
    const std::int64_t a1 = ctx.a(n - 1);
    const std::int64_t a2 = ctx.a(n - 2);
    ChiTable table{c, n, {a1, a2}, {}};
    for (const auto& [e, v] : xn.terms()) {
        const std::int64_t num1 = e.d2 + a2;
        const std::int64_t num2 = e.d1 + a1;
        if (num1 % c != 0 || num2 % c != 0)
            throw StructuralInconsistency("chi_from_expansion: term x1^" + std::to_string(e.d1) + " x2^" +
                                          std::to_string(e.d2) + " has non-integral (e1, e2)");
        const std::int64_t e1 = num1 / c;
        const std::int64_t e2 = a2 - num2 / c;
        if (e1 < 0 || e1 > a1 || e2 < 0 || e2 > a2)
            throw StructuralInconsistency("chi_from_expansion: (" + std::to_string(e1) + ", " + std::to_string(e2) +
                                          ") outside the dimension box");
        table.entries.emplace(std::make_pair(e1, e2), v);
    }
    return table;
}

inline ChiTable chi_from_expansion(const ClusterContext& ctx, std::int64_t n) {
    require_cluster_args(ctx, n, 3, "chi_from_expansion");
    return chi_table_from_expansion(ctx, n, cluster_var_recurrence(ctx, n));
}

/// Exponent of the monomial x1^{c(a_{n-2}-e2) - a_{n-1}} x2^{c e1 - a_{n-2}} carrying chi(e1, e2).
inline Exponent chi_monomial(const ClusterContext& ctx, std::int64_t n, std::int64_t e1, std::int64_t e2) {
    const std::int64_t c = ctx.c();
    return {c * (ctx.a(n - 2) - e2) - ctx.a(n - 1), c * e1 - ctx.a(n - 2)};
}

/// Values y_1..y_n of y_{k+1} = (y_k^c + 1) / y_{k-1} with y_1 = y_2 = 1.
inline std::vector<BigInt> scalar_recurrence(std::int64_t c, std::int64_t n) {
    std::vector<BigInt> y{BigInt(1), BigInt(1)};
    while (static_cast<std::int64_t>(y.size()) < n) {
        BigInt num = pow(y.back(), static_cast<unsigned>(c)) + 1;
        BigInt q, r;
        boost::multiprecision::divide_qr(num, y[y.size() - 2], q, r);
        if (!r.is_zero()) throw std::logic_error("scalar_recurrence: inexact step");
        y.push_back(q);
    }
    y.resize(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
    return y;
}

}  // namespace rank2
