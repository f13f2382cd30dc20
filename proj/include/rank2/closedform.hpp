#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rank2/bigint.hpp"
#include "rank2/combinat.hpp"
#include "rank2/laurent.hpp"
#include "rank2/recurrence.hpp"

namespace rank2 {

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

}  // namespace detail

/*
 * Depth-first walk over admissible tuples (t_0, ..., t_{depth-1}):
 *
 *   0 <= t_i <= a_{i+1} - c s_i   for every i < depth.
 *
 * The bound of each level is recomputed from the running prefix. A level whose
 * bound is negative has no admissible value and the branch ends there; this
 * does happen (e.g. c = 2, t = (0, 1, 0) leaves a_4 - c s_3 = -1).
 *
 * The visitor receives the prefix and the product of [a_{i+1} - c s_i; t_i],
 * which is positive for every admissible tuple.
 */
template <class Visitor>
void for_each_admissible(const ClusterContext& ctx, std::int64_t depth, ModBinomCache& binom, Visitor&& visit) {
    if (depth < 0) throw DomainError("enumerate_admissible: negative depth");
    const std::int64_t c = ctx.c();
    SPrefix prefix;
    std::vector<BigInt> weights{BigInt(1)};
    weights.reserve(static_cast<std::size_t>(depth) + 1);

    // Explicit stack of the next candidate t at each level.
    std::vector<std::int64_t> next(static_cast<std::size_t>(depth) + 1, 0);
    std::int64_t level = 0;
    if (depth == 0) {
        visit(static_cast<const SPrefix&>(prefix), static_cast<const BigInt&>(weights.back()));
        return;
    }
    next[0] = 0;
    while (level >= 0) {
        const std::int64_t top = ctx.a(level + 1) - c * prefix.s(level);
        auto& t = next[static_cast<std::size_t>(level)];
        if (t > top) {
            // exhausted (or empty when top < 0)
            if (level == 0) break;
            prefix.pop();
            weights.pop_back();
            --level;
            ++next[static_cast<std::size_t>(level)];
            continue;
        }
        prefix.push(c, t);
        weights.push_back(weights.back() * binom(top, t));
        if (level + 1 == depth) {
            visit(static_cast<const SPrefix&>(prefix), static_cast<const BigInt&>(weights.back()));
            prefix.pop();
            weights.pop_back();
            ++t;
        } else {
            ++level;
            next[static_cast<std::size_t>(level)] = 0;
        }
    }
}

/// Admissible tuples of length `depth` for x_n, 0 <= depth <= n - 3, in depth-first order.
inline std::vector<SPrefix> enumerate_admissible(const ClusterContext& ctx, std::int64_t n, std::int64_t depth) {
    if (n < 3 || depth < 0 || depth > n - 3)
        throw DomainError("enumerate_admissible: need 0 <= depth <= n - 3, got n = " + std::to_string(n) +
                          ", depth = " + std::to_string(depth));
    ModBinomCache binom;
    std::vector<SPrefix> out;
    for_each_admissible(ctx, depth, binom, [&](const SPrefix& p, const BigInt&) { out.push_back(p); });
    return out;
}

/*
 * One (e1, e2) query of the constrained sum
 *
 *   sum_t  prod_{i<=n-4} [a_{i+1} - c s_i; t_i]
 *        * [a_{n-2} - c s_{n-3}; a_{n-2} - c s_{n-3} - e2 + s_{n-4}]
 *        * [-a_{n-3} + c e2; -a_{n-3} + c e2 - e1 + s_{n-3}]
 *
 * over admissible t. When `windowed` is set, summands must also satisfy
 * 0 <= a_{n-2} - c s_{n-3} - e2 + s_{n-4} <= a_{n-2} - c s_{n-3}. For a
 * nonnegative middle top that window is exactly the support of the middle
 * binomial, so the two variants differ only on tuples with
 * a_{n-2} - c s_{n-3} < 0.
 *
 * `visit_summand` sees every nonzero summand.
 */
template <class Visitor>
BigInt chi_formula_visit(const ClusterContext& ctx, std::int64_t n, std::int64_t e1, std::int64_t e2, bool windowed,
                         ModBinomCache& binom, Visitor&& visit_summand) {
    if (ctx.c() < 1) throw DomainError("chi_formula: requires c >= 1");
    if (n < 3) throw DomainError("chi_formula: requires n >= 3, got n = " + std::to_string(n));
    const std::int64_t c = ctx.c();
    const std::int64_t a_n2 = ctx.a(n - 2);
    const std::int64_t a_n3 = ctx.a(n - 3);
    const std::int64_t last_top = -a_n3 + c * e2;
    BigInt total(0);
    for_each_admissible(ctx, n - 3, binom, [&](const SPrefix& p, const BigInt& weight) {
        const std::int64_t s4 = p.s(n - 4);
        const std::int64_t s3 = p.s(n - 3);
        const std::int64_t top = a_n2 - c * s3;
        const std::int64_t mid = top - e2 + s4;
        if (windowed && (mid < 0 || mid > top)) return;
        const BigInt& b_mid = binom(top, mid);
        if (b_mid.is_zero()) return;
        const BigInt& b_last = binom(last_top, last_top - e1 + s3);
        if (b_last.is_zero()) return;
        BigInt term = weight * b_mid * b_last;
        visit_summand(static_cast<const BigInt&>(term));
        total += term;
    });
    return total;
}

/// Euler characteristic of Gr_(e1,e2)(M(n)) from the closed form. Out-of-box (e1, e2) give 0.
inline BigInt chi_formula(const ClusterContext& ctx, std::int64_t n, std::int64_t e1, std::int64_t e2,
                          ModBinomCache& binom) {
    return chi_formula_visit(ctx, n, e1, e2, true, binom, [](const BigInt&) {});
}

inline BigInt chi_formula(const ClusterContext& ctx, std::int64_t n, std::int64_t e1, std::int64_t e2) {
    ModBinomCache binom;
    return chi_formula(ctx, n, e1, e2, binom);
}

/// The same sum without the e2 window; this is f(n-4) of the invariance identity.
inline BigInt chi_formula_raw(const ClusterContext& ctx, std::int64_t n, std::int64_t e1, std::int64_t e2,
                              ModBinomCache& binom) {
    return chi_formula_visit(ctx, n, e1, e2, false, binom, [](const BigInt&) {});
}

inline BigInt chi_formula_raw(const ClusterContext& ctx, std::int64_t n, std::int64_t e1, std::int64_t e2) {
    ModBinomCache binom;
    return chi_formula_raw(ctx, n, e1, e2, binom);
}

/// Nonzero summands of chi_formula in enumeration order. Every factor but
/// the last binomial is positive here.
inline std::vector<BigInt> chi_formula_summands(const ClusterContext& ctx, std::int64_t n, std::int64_t e1,
                                                std::int64_t e2) {
    ModBinomCache binom;
    std::vector<BigInt> out;
    chi_formula_visit(ctx, n, e1, e2, true, binom, [&](const BigInt& v) { out.push_back(v); });
    return out;
}

/*
 * All Euler characteristics of x_n at once: tuples are enumerated once and
 * each contributes to every (e1, e2) cell it can reach.
 *
 *   e2 in [s_{n-4}, a_{n-2} - c s_{n-3} + s_{n-4}]
 *   e1 >= s_{n-3}                    (last binomial vanishes below)
 *   e1 <= s_{n-3} - a_{n-3} + c e2   when that top is >= 0
 *   e2 a_{n-1} - e1 a_{n-2} >= 0
 *
 * The last inequality bounds e1 whenever a_{n-2} > 0; for n = 3 (a_1 = 0) the
 * top bound applies instead.
 */
inline ChiTable chi_table_formula(const ClusterContext& ctx, std::int64_t n) {
    require_cluster_args(ctx, n, 3, "cluster_var_formula");
    const std::int64_t c = ctx.c();
    const std::int64_t a_n1 = ctx.a(n - 1);
    const std::int64_t a_n2 = ctx.a(n - 2);
    const std::int64_t a_n3 = ctx.a(n - 3);
    ChiTable table{c, n, {a_n1, a_n2}, {}};
    ModBinomCache binom;
    for_each_admissible(ctx, n - 3, binom, [&](const SPrefix& p, const BigInt& weight) {
        const std::int64_t s4 = p.s(n - 4);
        const std::int64_t s3 = p.s(n - 3);
        const std::int64_t top = a_n2 - c * s3;
        if (top < 0) return;
        for (std::int64_t e2 = s4; e2 <= top + s4; ++e2) {
            const BigInt w2 = weight * binom(top, top - e2 + s4);
            const std::int64_t last_top = -a_n3 + c * e2;
            std::optional<std::int64_t> e1_max;
            if (last_top >= 0) e1_max = s3 + last_top;
            if (a_n2 > 0) {
                const std::int64_t bound = detail::floor_div(e2 * a_n1, a_n2);
                e1_max = e1_max ? std::min(*e1_max, bound) : bound;
            }
            if (!e1_max) throw std::logic_error("cluster_var_formula: unbounded e1 window");
            for (std::int64_t e1 = s3; e1 <= *e1_max; ++e1) {
                if (e2 * a_n1 - e1 * a_n2 < 0) continue;
                const BigInt& b_last = binom(last_top, last_top - e1 + s3);
                if (b_last.is_zero()) continue;
                auto [it, inserted] = table.entries.try_emplace({e1, e2}, w2 * b_last);
                if (!inserted) it->second += w2 * b_last;
            }
        }
    });
    std::erase_if(table.entries, [](const auto& kv) { return kv.second.is_zero(); });
    return table;
}

/// Assembles x_n = sum chi(e1, e2) x1^{c(a_{n-2}-e2) - a_{n-1}} x2^{c e1 - a_{n-2}}.
inline LaurentPoly2 expansion_from_chi(const ClusterContext& ctx, const ChiTable& table) {
    LaurentPoly2 x;
    for (const auto& [e, v] : table.entries) x.add_term(chi_monomial(ctx, table.n, e.first, e.second), v);
    return x;
}

/// x_n from the closed-form constrained sum.
inline LaurentPoly2 cluster_var_formula(const ClusterContext& ctx, std::int64_t n) {
    return expansion_from_chi(ctx, chi_table_formula(ctx, n));
}

/*
 * x_n from the (t_0, ..., t_{n-2}) parametrization
 *
 *   x_n = x1^{-a_{n-1}} x2^{-a_{n-2}} sum prod_{i<=n-2} [a_{i+1} - c s_i; t_i] x1^{c s_{n-2}} x2^{c(a_{n-1} - s_{n-1})}
 *
 * with 0 <= t_i <= a_{i+1} - c s_i for i <= n-3 and s_{n-1} a_{n-2} - s_{n-2} a_{n-1} >= 0.
 * t_{n-2} has no explicit box; it runs over the values reached from the
 * (e1, e2) windows by t_{n-3} = a_{n-2} - e2 - c s_{n-3} + s_{n-4} and
 * t_{n-2} = (a_{n-1} - e1) - c (a_{n-2} - e2) + s_{n-3}:
 *
 *   t_{n-2} <= a_{n-1} - c s_{n-2}      (binomial vanishes above)
 *   t_{n-2} >= 0                        when that top is >= 0
 *   s_{n-1} >= ceil(s_{n-2} a_{n-1} / a_{n-2})   when a_{n-2} > 0
 */
inline LaurentPoly2 cluster_var_formula_v2(const ClusterContext& ctx, std::int64_t n) {
    require_cluster_args(ctx, n, 3, "cluster_var_formula_v2");
    const std::int64_t c = ctx.c();
    const std::int64_t a_n1 = ctx.a(n - 1);
    const std::int64_t a_n2 = ctx.a(n - 2);
    ModBinomCache binom;
    LaurentPoly2 x;
    for_each_admissible(ctx, n - 3, binom, [&](const SPrefix& base, const BigInt& weight) {
        const std::int64_t top3 = a_n2 - c * base.s(n - 3);
        SPrefix p = base;
        for (std::int64_t t3 = 0; t3 <= top3; ++t3) {
            p.push(c, t3);  // t_{n-3}; now s_{n-2} is known
            const BigInt w3 = weight * binom(top3, t3);
            const std::int64_t s_n2 = p.s(n - 2);
            const std::int64_t s_n3 = p.s(n - 3);
            const std::int64_t top2 = a_n1 - c * s_n2;
            std::optional<std::int64_t> lo;
            if (top2 >= 0) lo = 0;
            if (a_n2 > 0) {
                const std::int64_t t_from_ineq = detail::ceil_div(s_n2 * a_n1, a_n2) - c * s_n2 + s_n3;
                lo = lo ? std::max(*lo, t_from_ineq) : t_from_ineq;
            }
            if (!lo) throw std::logic_error("cluster_var_formula_v2: unbounded t_{n-2} window");
            for (std::int64_t t2 = *lo; t2 <= top2; ++t2) {
                p.push(c, t2);  // t_{n-2}; now s_{n-1} is known
                const std::int64_t s_n1 = p.s(n - 1);
                if (s_n1 * a_n2 - s_n2 * a_n1 >= 0) {
                    const BigInt& b = binom(top2, t2);
                    if (!b.is_zero())
                        x.add_term({c * s_n2 - a_n1, c * (a_n1 - s_n1) - a_n2}, w3 * b);
                }
                p.pop();
            }
            p.pop();
        }
    });
    return x;
}

}  // namespace rank2
