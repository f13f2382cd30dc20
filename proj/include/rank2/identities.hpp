#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rank2/bigint.hpp"
#include "rank2/closedform.hpp"
#include "rank2/combinat.hpp"

namespace rank2 {

/// Univariate polynomial with exact rational coefficients; coeffs[i] multiplies w^i.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static IntPolynomial constant(const Rational& v) { return IntPolynomial({v}); }

    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    /// Degree; the zero polynomial reports 0.
    std::int64_t degree() const noexcept {
        return coeffs_.empty() ? 0 : static_cast<std::int64_t>(coeffs_.size()) - 1;
    }

    Rational operator()(std::int64_t w) const {
        Rational acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * w + *it;
        return acc;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rational> coeffs_;
};

/// Both sides of sum_w P(w) [A; w][B; m-w] = sum_w P(w) [A; A-w][B; B-m+w].
struct VandermondeSides {
    Rational lhs;
    Rational rhs;
};

/*
 * Requires A + B >= deg P >= 0, so at least one of A, B is nonnegative. A
 * nonnegative A confines both sides to 0 <= w <= A, a nonnegative B to
 * m - B <= w <= m; outside those windows every term vanishes.
 */
inline VandermondeSides genvander_both_sides(std::int64_t A, std::int64_t B, std::int64_t m, const IntPolynomial& P) {
    if (A + B < P.degree())
        throw DomainError("genvander: requires A + B >= deg P, got A = " + std::to_string(A) + ", B = " +
                          std::to_string(B) + ", deg P = " + std::to_string(P.degree()));
    std::int64_t lo = std::numeric_limits<std::int64_t>::min();
    std::int64_t hi = std::numeric_limits<std::int64_t>::max();
    if (A >= 0) {
        lo = std::max<std::int64_t>(lo, 0);
        hi = std::min(hi, A);
    }
    if (B >= 0) {
        lo = std::max(lo, m - B);
        hi = std::min(hi, m);
    }
    VandermondeSides out{Rational(0), Rational(0)};
    for (std::int64_t w = lo; w <= hi; ++w) {
        const Rational pw = P(w);
        out.lhs += pw * Rational(mod_binom(A, w) * mod_binom(B, m - w));
        out.rhs += pw * Rational(mod_binom(A, A - w) * mod_binom(B, B - m + w));
    }
    return out;
}

/*
 * Running sums v_i = sum_{k=1}^{i-1} a_{i-k+1} w_k over w_1, ..., w_k, with
 * v_i = 0 for i <= 1 and v_i = c v_{i-1} - v_{i-2} + w_{i-1}.
 */
class VPrefix {
public:
    VPrefix() : v_{0, 0} {}

    const std::vector<std::int64_t>& entries() const noexcept { return w_; }

    /// v_i for i <= length() + 1; w's past the end read as zero.
    std::int64_t v(std::int64_t i) const {
        if (i <= 1) return 0;
        if (i < static_cast<std::int64_t>(v_.size())) return v_[static_cast<std::size_t>(i)];
        throw DomainError("VPrefix: v_" + std::to_string(i) + " not yet determined");
    }

    void push(std::int64_t c, std::int64_t w_next) {
        w_.push_back(w_next);
        const auto i = static_cast<std::int64_t>(v_.size());
        v_.push_back(c * v(i - 1) - v(i - 2) + w_next);
    }

    void pop() {
        w_.pop_back();
        v_.pop_back();
    }

private:
    std::vector<std::int64_t> w_;
    std::vector<std::int64_t> v_;  // v_[i] = v_i, starting with v_0 = v_1 = 0
};

namespace detail {

/*
 * Evaluates f(j) for fixed (t_0..t_j). Each w_k ranges over values where its
 * own trailing binomial and the bounding linear forms allow a nonzero term:
 *
 *   v_{n-3-j} <= e2 a_{n-2-j} - e1 a_{n-3-j} - s_j       (first binomial)
 *   v_{n-3-j} >= that bound - (a_{j+2} - c s_{j+1})      when that top is >= 0
 *   v_{n-4-j} <= e2 a_{n-3-j} - e1 a_{n-4-j} - s_{j+1}   (middle binomial:
 *                 its top minus its bottom equals this slack)
 *   w_k <= G_k when G_k >= 0                             (trailing binomials)
 *
 * All forms have coefficients a_2, a_3, ... >= 1, so every w is bounded. The
 * leaf still evaluates every binomial literally.
 */
class FEvaluator {
public:
    FEvaluator(const ClusterContext& ctx, std::int64_t n, std::int64_t e1, std::int64_t e2, std::int64_t j,
               ModBinomCache& binom)
        : ctx_(ctx), c_(ctx.c()), n_(n), e1_(e1), e2_(e2), j_(j), m_(n - j - 4), binom_(binom) {}

    BigInt run() {
        BigInt total(0);
        for_each_admissible(ctx_, j_ + 1, binom_, [&](const SPrefix& t, const BigInt& weight) {
            total += weight * sum_over_w(t);
        });
        return total;
    }

private:
    // E_i = e2 a_{i+1} - e1 a_i - v_i, the recurring combination in every factor.
    std::int64_t pairing(std::int64_t i, const VPrefix& w) const {
        return e2_ * ctx_.a(i + 1) - e1_ * ctx_.a(i) - w.v(i);
    }

    BigInt sum_over_w(const SPrefix& t) {
        s_j_ = t.s(j_);
        s_j1_ = t.s(j_ + 1);
        first_top_ = ctx_.a(j_ + 2) - c_ * s_j1_;
        first_hi_ = e2_ * ctx_.a(n_ - 2 - j_) - e1_ * ctx_.a(n_ - 3 - j_) - s_j_;
        slack_hi_ = e2_ * ctx_.a(n_ - 3 - j_) - e1_ * ctx_.a(n_ - 4 - j_) - s_j1_;
        // middle top = -a_{j+1} + c E with E in [s_j, s_j + first_top]; a lower
        // bound on the slack exists only when every such top is nonnegative.
        slack_lo_.reset();
        if (first_top_ >= 0 && -ctx_.a(j_ + 1) + c_ * s_j_ >= 0)
            slack_lo_ = slack_hi_ - (-ctx_.a(j_ + 1) + c_ * (s_j_ + first_top_));
        if (first_hi_ < 0 || slack_hi_ < 0) return BigInt(0);
        if (m_ == 0) return leaf(VPrefix{});
        sum_ = 0;
        VPrefix w;
        descend(w, 1, BigInt(1));
        return sum_;
    }

    // Contribution of v_{target} from w_1..w_{k}: coefficient of w_k is a_{target-k+1}.
    std::int64_t partial(const VPrefix& w, std::int64_t target) const {
        std::int64_t acc = 0;
        const auto& ws = w.entries();
        for (std::size_t k = 1; k <= ws.size(); ++k) {
            const auto idx = target - static_cast<std::int64_t>(k) + 1;
            if (idx >= 2) acc += ctx_.a(idx) * ws[k - 1];
        }
        return acc;
    }

    void descend(VPrefix& w, std::int64_t k, const BigInt& weight) {
        // w_k feeds v_{n-3-j} with coefficient a_{n-2-j-k} and v_{n-4-j} with a_{n-3-j-k}.
        const std::int64_t first_idx = n_ - 3 - j_;
        const std::int64_t slack_idx = n_ - 4 - j_;
        std::int64_t hi = std::numeric_limits<std::int64_t>::max();
        std::int64_t lo = 0;

        const std::int64_t alpha = ctx_.a(first_idx - k + 1);
        const std::int64_t p1 = partial(w, first_idx);
        hi = std::min(hi, floor_div(first_hi_ - p1, alpha));
        if (k == m_ && first_top_ >= 0) lo = std::max(lo, ceil_div(first_hi_ - first_top_ - p1, alpha));

        if (k <= slack_idx - 1) {
            const std::int64_t beta = ctx_.a(slack_idx - k + 1);
            const std::int64_t p2 = partial(w, slack_idx);
            hi = std::min(hi, floor_div(slack_hi_ - p2, beta));
            if (k == slack_idx - 1 && slack_lo_) lo = std::max(lo, ceil_div(*slack_lo_ - p2, beta));
        }

        // trailing factor [G_k; G_k - w_k], G_k = -a_{n-2-k} + c E_k
        const std::int64_t g = -ctx_.a(n_ - 2 - k) + c_ * pairing(k, w);
        if (g >= 0) hi = std::min(hi, g);

        for (std::int64_t wk = lo; wk <= hi; ++wk) {
            const BigInt& factor = binom_(g, g - wk);
            if (factor.is_zero()) continue;
            w.push(c_, wk);
            const BigInt next = weight * factor;
            if (k == m_)
                sum_ += next * leaf(w);
            else
                descend(w, k + 1, next);
            w.pop();
        }
    }

    // First and middle binomials; w holds w_1..w_m, later w's are zero.
    BigInt leaf(VPrefix w) {
        while (static_cast<std::int64_t>(w.entries().size()) < n_ - 3 - j_) w.push(c_, 0);
        const std::int64_t E = pairing(n_ - 3 - j_, w);
        const BigInt& first = binom_(first_top_, first_top_ + s_j_ - E);
        if (first.is_zero()) return BigInt(0);
        const std::int64_t mid_top = -ctx_.a(j_ + 1) + c_ * E;
        const std::int64_t mid_bottom =
            s_j1_ - ctx_.a(j_ + 1) + e2_ * ctx_.a(n_ - 1 - j_) - e1_ * ctx_.a(n_ - 2 - j_) - w.v(n_ - 2 - j_);
        const std::int64_t slack = slack_hi_ - w.v(n_ - 4 - j_);
        if (mid_top - mid_bottom != slack)
            throw std::logic_error("f_eval: middle binomial slack disagrees with its linear form");
        return first * binom_(mid_top, mid_bottom);
    }

    const ClusterContext& ctx_;
    std::int64_t c_, n_, e1_, e2_, j_, m_;
    ModBinomCache& binom_;
    std::int64_t s_j_ = 0, s_j1_ = 0, first_top_ = 0, first_hi_ = 0, slack_hi_ = 0;
    std::optional<std::int64_t> slack_lo_;
    BigInt sum_;
};

}  // namespace detail

/*
 * f(j), -1 <= j <= n-4: the sum over admissible (t_0..t_j) and w_1..w_{n-j-4} >= 0
 * of
 *   prod_{i<=j} [a_{i+1} - c s_i; t_i]
 *   * [a_{j+2} - c s_{j+1}; a_{j+2} - c s_{j+1} + s_j - E_{n-3-j}]
 *   * [-a_{j+1} + c E_{n-3-j}; s_{j+1} - a_{j+1} + E_{n-2-j} + w_{n-3-j}]
 *   * prod_{i=j+2}^{n-3} [-a_i + c E_{n-i-2}; -a_i + c E_{n-i-2} - w_{n-i-2}]
 * with E_i = e2 a_{i+1} - e1 a_i - v_i and w_k = 0 outside 1 <= k <= n-j-4.
 * f(n-4) is the constrained sum of chi_formula without its e2 window.
 *
 * Finiteness needs a_2, ..., a_{n-3-j} >= 1; otherwise (only possible for
 * c = 1) the evaluation is rejected.
 */
inline BigInt f_eval(const ClusterContext& ctx, std::int64_t n, std::int64_t e1, std::int64_t e2, std::int64_t j,
                     ModBinomCache& binom) {
    if (ctx.c() < 1) throw DomainError("f_eval: requires c >= 1");
    if (n < 3) throw DomainError("f_eval: requires n >= 3");
    if (j < -1 || j > n - 4)
        throw DomainError("f_eval: requires -1 <= j <= n - 4, got j = " + std::to_string(j));
    for (std::int64_t i = 2; i <= n - 3 - j; ++i)
        if (ctx.a(i) < 1)
            throw DomainError("f_eval: a_" + std::to_string(i) + " = " + std::to_string(ctx.a(i)) +
                              " leaves the w-summation unbounded");
    return detail::FEvaluator(ctx, n, e1, e2, j, binom).run();
}

inline BigInt f_eval(const ClusterContext& ctx, std::int64_t n, std::int64_t e1, std::int64_t e2, std::int64_t j) {
    ModBinomCache binom;
    return f_eval(ctx, n, e1, e2, j, binom);
}

/// True iff the vanishing sum for a pair with e2 a_{n-1} - e1 a_{n-2} < 0 is exactly zero.
inline bool vanishing_check(const ClusterContext& ctx, std::int64_t n, std::int64_t e1, std::int64_t e2) {
    if (ctx.c() < 1) throw DomainError("vanishing_check: requires c >= 1");
    if (n < 3) throw DomainError("vanishing_check: requires n >= 3");
    if (e2 * ctx.a(n - 1) - e1 * ctx.a(n - 2) >= 0)
        throw DomainError("vanishing_check: requires e2 a_{n-1} - e1 a_{n-2} < 0");
    return f_eval(ctx, n, e1, e2, n - 4).is_zero();
}

}  // namespace rank2
