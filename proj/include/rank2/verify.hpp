#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rank2/closedform.hpp"
#include "rank2/combinat.hpp"
#include "rank2/identities.hpp"
#include "rank2/laurent.hpp"
#include "rank2/recurrence.hpp"

namespace rank2::verify {

/// mt19937_64 with a bounded draw whose output does not depend on the standard library.
class SeededDraw {
public:
    explicit SeededDraw(std::uint64_t seed) : gen_(seed) {}

    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(gen_());
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % span);
        std::uint64_t x;
        do x = gen_();
        while (x >= limit);
        return lo + static_cast<std::int64_t>(x % span);
    }

    std::int64_t nonzero(std::int64_t bound) {
        std::int64_t v = 0;
        while (v == 0) v = uniform(-bound, bound);
        return v;
    }

private:
    std::mt19937_64 gen_;
};

struct VandermondeInstance {
    std::int64_t A = 0, B = 0, m = 0;
    IntPolynomial P;
};

/// |A|, |B| <= 12 with A + B >= 0, |m| <= 15, deg P <= min(4, A + B), coefficients p/q with p, q in [-9, 9] \ {0}.
inline VandermondeInstance random_vandermonde(SeededDraw& rng) {
    VandermondeInstance inst;
    do {
        inst.A = rng.uniform(-12, 12);
        inst.B = rng.uniform(-12, 12);
    } while (inst.A + inst.B < 0);
    inst.m = rng.uniform(-15, 15);
    const std::int64_t q = rng.uniform(0, std::min<std::int64_t>(4, inst.A + inst.B));
    std::vector<Rational> coeffs;
    for (std::int64_t i = 0; i <= q; ++i) coeffs.emplace_back(rng.nonzero(9), rng.nonzero(9));
    inst.P = IntPolynomial(std::move(coeffs));
    return inst;
}

/// (e1, e2) with e2 a_{n-1} - e1 a_{n-2} < 0 drawn from a margin around the dimension box.
inline std::pair<std::int64_t, std::int64_t> random_negative_pair(const ClusterContext& ctx, std::int64_t n,
                                                                  SeededDraw& rng) {
    const std::int64_t d1 = ctx.a(n - 1);
    const std::int64_t d2 = ctx.a(n - 2);
    const std::int64_t margin = 5;
    for (;;) {
        const std::int64_t e1 = rng.uniform(std::min<std::int64_t>(0, d1) - margin, std::max<std::int64_t>(0, d1) + margin);
        const std::int64_t e2 = rng.uniform(std::min<std::int64_t>(0, d2) - margin, std::max<std::int64_t>(0, d2) + margin);
        if (e2 * d1 - e1 * d2 < 0) return {e1, e2};
    }
}

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double millis = 0.0;
};

struct GridPoint {
    std::int64_t c;
    std::int64_t n;
};

/// c = 2: n <= 12, c = 3: n <= 8, c = 4: n <= 7, all starting at n = 3.
inline std::vector<GridPoint> acceptance_grid() {
    std::vector<GridPoint> g;
    for (auto [c, nmax] : {std::pair<std::int64_t, std::int64_t>{2, 12}, {3, 8}, {4, 7}})
        for (std::int64_t n = 3; n <= nmax; ++n) g.push_back({c, n});
    return g;
}

struct Plan {
    std::vector<GridPoint> grid;
    std::vector<std::int64_t> vanishing_cs{1, 2, 3};
    std::int64_t vanishing_nmax = 7;
    std::vector<std::int64_t> invariance_cs{2, 3};
    std::int64_t invariance_nmax = 7;
    std::vector<std::int64_t> nonneg_cs{3, 4};
    std::int64_t trials = 500;
    std::int64_t vanishing_trials = 100;
    std::uint64_t seed = 0;
};

inline Plan default_plan() {
    Plan p;
    p.grid = acceptance_grid();
    return p;
}

/// Restricts every suite to one c and n <= n_max.
inline Plan restricted_plan(std::int64_t c, std::int64_t n_max) {
    Plan p;
    for (std::int64_t n = 3; n <= n_max; ++n) p.grid.push_back({c, n});
    p.vanishing_cs = {c};
    p.vanishing_nmax = std::min<std::int64_t>(n_max, 7);
    p.invariance_cs = {c};
    p.invariance_nmax = std::min<std::int64_t>(n_max, 7);
    p.nonneg_cs = c >= 3 ? std::vector<std::int64_t>{c} : std::vector<std::int64_t>{};
    return p;
}

namespace detail {

inline std::string label(std::int64_t c, std::int64_t n) {
    return "c=" + std::to_string(c) + " n=" + std::to_string(n);
}

using Job = std::function<CheckResult()>;

inline CheckResult timed(std::string name, const std::function<std::string()>& body) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    r.name = std::move(name);
    try {
        r.detail = body();
        r.passed = r.detail.empty();
    } catch (const std::exception& ex) {
        r.detail = std::string("exception: ") + ex.what();
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

inline std::string compare_expansions(const LaurentPoly2& got, const LaurentPoly2& want) {
    if (got == want) return {};
    for (const auto& [e, v] : want.terms())
        if (got.coeff(e.d1, e.d2) != v)
            return "coefficient at (" + std::to_string(e.d1) + ", " + std::to_string(e.d2) + "): got " +
                   got.coeff(e.d1, e.d2).str() + ", want " + v.str();
    for (const auto& [e, v] : got.terms())
        if (want.coeff(e.d1, e.d2).is_zero())
            return "extra term at (" + std::to_string(e.d1) + ", " + std::to_string(e.d2) + ")";
    return "expansions differ";
}

/// Counts failing (e1, e2) probes and keeps the first one for the report.
class Tally {
public:
    void add(std::int64_t e1, std::int64_t e2, const std::string& what, bool negative_pairing) {
        if (count_ == 0) first_ = "(" + std::to_string(e1) + ", " + std::to_string(e2) + "): " + what;
        ++count_;
        if (negative_pairing) ++negative_;
    }

    /// Empty when nothing failed.
    std::string report(const std::string& unit) const {
        if (count_ == 0) return {};
        return std::to_string(count_) + " " + unit + " failed (" + std::to_string(negative_) +
               " with e2 a_{n-1} - e1 a_{n-2} < 0), first " + first_;
    }

private:
    std::int64_t count_ = 0;
    std::int64_t negative_ = 0;
    std::string first_;
};

}  // namespace detail

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"oracle", "v2", "chi", "sums", "denominators", "nonnegativity",
                                                "vanishing", "vandermonde", "invariance"};
    return names;
}

/// Builds the checks of one suite ("all" for every suite).
inline std::vector<detail::Job> build_jobs(const Plan& plan, const std::string& suite) {
    using detail::label;
    using detail::timed;
    std::vector<detail::Job> jobs;
    const bool all = suite == "all";

    for (const auto& gp : plan.grid) {
        const auto c = gp.c, n = gp.n;
        if (all || suite == "oracle")
            jobs.emplace_back([=] {
                return timed("oracle " + label(c, n), [=] {
                    ClusterContext ctx(c);
                    return detail::compare_expansions(cluster_var_formula(ctx, n), cluster_var_recurrence(ctx, n));
                });
            });
        if (all || suite == "v2")
            jobs.emplace_back([=] {
                return timed("v2 " + label(c, n), [=] {
                    ClusterContext ctx(c);
                    return detail::compare_expansions(cluster_var_formula_v2(ctx, n), cluster_var_formula(ctx, n));
                });
            });
        if (all || suite == "chi")
            jobs.emplace_back([=] {
                return timed("chi " + label(c, n), [=]() -> std::string {
                    ClusterContext ctx(c);
                    const ChiTable oracle = chi_from_expansion(ctx, n);
                    ModBinomCache binom;
                    detail::Tally bad;
                    for (std::int64_t e1 = 0; e1 <= oracle.dim.d1; ++e1)
                        for (std::int64_t e2 = 0; e2 <= oracle.dim.d2; ++e2) {
                            const BigInt got = chi_formula(ctx, n, e1, e2, binom);
                            const BigInt want = oracle.at(e1, e2);
                            if (got != want)
                                bad.add(e1, e2, got.str() + " != " + want.str(),
                                        e2 * oracle.dim.d1 - e1 * oracle.dim.d2 < 0);
                        }
                    return bad.report("cells");
                });
            });
        if (all || suite == "sums")
            jobs.emplace_back([=] {
                return timed("sums " + label(c, n), [=]() -> std::string {
                    ClusterContext ctx(c);
                    const Rational at_one = lp_eval_int(cluster_var_recurrence(ctx, n), 1, 1);
                    const BigInt want = scalar_recurrence(c, n).back();
                    if (at_one != Rational(want)) return "x_n(1,1) = " + at_one.str() + ", want " + want.str();
                    if (chi_from_expansion(ctx, n).total() != want) return "chi total differs from x_n(1,1)";
                    return {};
                });
            });
        if (all || suite == "denominators")
            jobs.emplace_back([=] {
                return timed("denominators " + label(c, n), [=]() -> std::string {
                    ClusterContext ctx(c);
                    const LaurentPoly2 x = cluster_var_recurrence(ctx, n);
                    const Exponent lo = *x.min_exponents();
                    if (lo.d1 != -ctx.a(n - 1) || lo.d2 != -ctx.a(n - 2)) return "minimal exponents differ";
                    if (x.coeff(lo.d1, lo.d2) != 1) return "pure denominator coefficient is not 1";
                    return {};
                });
            });
        const bool nonneg_c = std::find(plan.nonneg_cs.begin(), plan.nonneg_cs.end(), c) != plan.nonneg_cs.end();
        if (all || suite == "nonnegativity")
            jobs.emplace_back([=] {
                return timed("nonnegativity " + label(c, n), [=]() -> std::string {
                    ClusterContext ctx(c);
                    const LaurentPoly2 x = cluster_var_recurrence(ctx, n);
                    for (const auto& kv : x.terms())
                        if (kv.second.sign() < 0) return "negative Laurent coefficient";
                    if (!nonneg_c) return {};
                    const std::int64_t d1 = ctx.a(n - 1), d2 = ctx.a(n - 2), a3 = ctx.a(n - 3);
                    ModBinomCache binom;
                    for (std::int64_t e2 = 0; e2 <= d2; ++e2) {
                        if (c * e2 < a3) continue;
                        for (std::int64_t e1 = 0; e1 <= d1; ++e1) {
                            bool bad = false;
                            chi_formula_visit(ctx, n, e1, e2, true, binom, [&](const BigInt& s) {
                                if (s.sign() < 0) bad = true;
                            });
                            if (bad || chi_formula(ctx, n, e1, e2, binom).sign() < 0)
                                return "negative summand or value at (" + std::to_string(e1) + ", " +
                                       std::to_string(e2) + ")";
                        }
                    }
                    return {};
                });
            });
    }

    if (all || suite == "vanishing")
        for (auto c : plan.vanishing_cs)
            for (std::int64_t n = 4; n <= plan.vanishing_nmax; ++n)
                jobs.emplace_back([=, trials = plan.vanishing_trials, seed = plan.seed] {
                    return timed("vanishing " + label(c, n), [=]() -> std::string {
                        ClusterContext ctx(c);
                        SeededDraw rng(seed + static_cast<std::uint64_t>(1000 * c + n));
                        ModBinomCache binom;
                        detail::Tally bad;
                        for (std::int64_t i = 0; i < trials; ++i) {
                            const auto [e1, e2] = random_negative_pair(ctx, n, rng);
                            const BigInt chi = chi_formula(ctx, n, e1, e2, binom);
                            if (!chi.is_zero())
                                bad.add(e1, e2, "chi_formula = " + chi.str(), true);
                            else if (!vanishing_check(ctx, n, e1, e2))
                                bad.add(e1, e2, "unwindowed sum nonzero", true);
                        }
                        return bad.report("draws");
                    });
                });

    if (all || suite == "vandermonde")
        jobs.emplace_back([trials = plan.trials, seed = plan.seed] {
            return timed("vandermonde trials=" + std::to_string(trials), [=]() -> std::string {
                SeededDraw rng(seed);
                for (std::int64_t i = 0; i < trials; ++i) {
                    const auto inst = random_vandermonde(rng);
                    const auto sides = genvander_both_sides(inst.A, inst.B, inst.m, inst.P);
                    if (sides.lhs != sides.rhs)
                        return "A=" + std::to_string(inst.A) + " B=" + std::to_string(inst.B) +
                               " m=" + std::to_string(inst.m) + ": " + sides.lhs.str() + " != " + sides.rhs.str();
                }
                return {};
            });
        });

    if (all || suite == "invariance")
        for (auto c : plan.invariance_cs)
            for (std::int64_t n = 5; n <= plan.invariance_nmax; ++n)
                jobs.emplace_back([=] {
                    return timed("invariance " + label(c, n), [=]() -> std::string {
                        ClusterContext ctx(c);
                        ModBinomCache binom;
                        detail::Tally bad;
                        for (std::int64_t e1 = 0; e1 <= ctx.a(n - 1); ++e1)
                            for (std::int64_t e2 = 0; e2 <= ctx.a(n - 2); ++e2) {
                                const bool negative = e2 * ctx.a(n - 1) - e1 * ctx.a(n - 2) < 0;
                                const BigInt ref = f_eval(ctx, n, e1, e2, n - 4, binom);
                                const BigInt chi = chi_formula(ctx, n, e1, e2, binom);
                                if (ref != chi) {
                                    bad.add(e1, e2, "f(n-4) = " + ref.str() + ", chi_formula = " + chi.str(), negative);
                                    continue;
                                }
                                for (std::int64_t j = -1; j < n - 4; ++j) {
                                    const BigInt fj = f_eval(ctx, n, e1, e2, j, binom);
                                    if (fj != ref) {
                                        bad.add(e1, e2,
                                                "f(" + std::to_string(j) + ") = " + fj.str() + ", f(n-4) = " + ref.str(),
                                                negative);
                                        break;
                                    }
                                }
                            }
                        return bad.report("cells");
                    });
                });
    return jobs;
}

/// Runs the jobs on up to `workers` threads; results come back sorted by check name.
inline std::vector<CheckResult> run_jobs(const std::vector<detail::Job>& jobs, unsigned workers) {
    std::vector<CheckResult> results(jobs.size());
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) results[i] = jobs[i]();
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    std::stable_sort(results.begin(), results.end(),
                     [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    return results;
}

}  // namespace rank2::verify
