#include <cstdint>
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "rank2/closedform.hpp"

using namespace rank2;

namespace {

using P = LaurentPoly2;

struct Grid {
    std::int64_t c;
    std::int64_t n_max;
};

constexpr Grid kGrid[] = {{2, 10}, {3, 7}, {4, 6}};

}  // namespace

TEST(Enumerate, SmallCounts) {
    ClusterContext ctx(2);
    const auto four = enumerate_admissible(ctx, 4, 1);
    ASSERT_EQ(four.size(), 1u);
    EXPECT_EQ(four[0].entries(), (std::vector<std::int64_t>{0}));
    const auto five = enumerate_admissible(ctx, 5, 2);
    ASSERT_EQ(five.size(), 2u);
    EXPECT_EQ(five[0].entries(), (std::vector<std::int64_t>{0, 0}));
    EXPECT_EQ(five[1].entries(), (std::vector<std::int64_t>{0, 1}));
}

TEST(Enumerate, MatchesBruteForceBoxScan) {
    for (std::int64_t c : {2, 3}) {
        ClusterContext ctx(c);
        const std::int64_t n = 7, depth = n - 3;
        std::size_t brute = 0;
        std::vector<std::int64_t> t(depth);
        std::function<void(std::int64_t)> scan = [&](std::int64_t i) {
            if (i == depth) {
                SPrefix p;
                for (std::int64_t k = 0; k < depth; ++k) {
                    if (t[k] > ctx.a(k + 1) - c * p.s(k)) return;
                    p.push(c, t[k]);
                }
                ++brute;
                return;
            }
            for (t[i] = 0; t[i] <= ctx.a(i + 1); ++t[i]) scan(i + 1);
        };
        scan(0);
        const auto tuples = enumerate_admissible(ctx, n, depth);
        EXPECT_EQ(tuples.size(), brute) << "c=" << c;
        for (const auto& p : tuples) {
            EXPECT_EQ(p.entries()[0], 0);
            for (std::int64_t i = 0; i < depth; ++i) {
                EXPECT_GE(p.entries()[i], 0);
                EXPECT_LE(p.entries()[i], ctx.a(i + 1) - c * p.s(i));
            }
        }
    }
}

TEST(Enumerate, DepthBounds) {
    ClusterContext ctx(2);
    EXPECT_THROW(enumerate_admissible(ctx, 5, 3), DomainError);
    EXPECT_THROW(enumerate_admissible(ctx, 5, -1), DomainError);
    EXPECT_EQ(enumerate_admissible(ctx, 5, 0).size(), 1u);
}

TEST(ChiFormula, Examples) {
    ClusterContext ctx(2);
    EXPECT_EQ(chi_formula(ctx, 4, 1, 1), 2);
    EXPECT_EQ(chi_formula(ctx, 4, 0, 0), 1);
    EXPECT_EQ(chi_formula(ctx, 4, 1, 0), 0);
}

TEST(ChiFormula, MatchesOracleWhereThePairingIsNonnegative) {
    for (const auto& g : kGrid) {
        ClusterContext ctx(g.c);
        for (std::int64_t n = 3; n <= g.n_max; ++n) {
            const ChiTable t = chi_from_expansion(ctx, n);
            for (std::int64_t e1 = 0; e1 <= t.dim.d1; ++e1)
                for (std::int64_t e2 = 0; e2 <= t.dim.d2; ++e2)
                    if (e2 * t.dim.d1 - e1 * t.dim.d2 >= 0) {
                        EXPECT_EQ(chi_formula(ctx, n, e1, e2), t.at(e1, e2))
                            << "c=" << g.c << " n=" << n << " e=(" << e1 << "," << e2 << ")";
                    }
        }
    }
}

TEST(ChiFormula, FullBoxAgreementForSmallN) {
    // For n <= 5 the whole dimension box agrees, including negative pairings.
    for (const auto& g : kGrid) {
        ClusterContext ctx(g.c);
        for (std::int64_t n = 3; n <= 5; ++n) {
            const ChiTable t = chi_from_expansion(ctx, n);
            for (std::int64_t e1 = 0; e1 <= t.dim.d1; ++e1)
                for (std::int64_t e2 = 0; e2 <= t.dim.d2; ++e2) EXPECT_EQ(chi_formula(ctx, n, e1, e2), t.at(e1, e2));
        }
    }
}

TEST(ChiFormula, NegativePairingCounterexample) {
    // The sum has two terms, 3 and -4, although the Grassmannian is empty.
    ClusterContext ctx(2);
    EXPECT_EQ(chi_from_expansion(ctx, 6).at(2, 0), 0);
    EXPECT_EQ(chi_formula(ctx, 6, 2, 0), -1);
    const auto terms = chi_formula_summands(ctx, 6, 2, 0);
    EXPECT_EQ(terms, (std::vector<BigInt>{3, -4}));
    EXPECT_EQ(chi_formula_raw(ctx, 6, 2, 0), 0);
}

TEST(ChiFormula, OutOfBoxWithNonnegativePairingIsZero) {
    std::mt19937_64 rng(3);
    for (const auto& g : kGrid) {
        ClusterContext ctx(g.c);
        for (std::int64_t n = 3; n <= g.n_max; ++n) {
            const std::int64_t d1 = ctx.a(n - 1), d2 = ctx.a(n - 2);
            std::uniform_int_distribution<std::int64_t> r1(-10, d1 + 10), r2(-10, d2 + 10);
            int drawn = 0;
            while (drawn < 50) {
                const std::int64_t e1 = r1(rng), e2 = r2(rng);
                if (e1 >= 0 && e1 <= d1 && e2 >= 0 && e2 <= d2) continue;
                if (e2 * d1 - e1 * d2 < 0) continue;
                ++drawn;
                EXPECT_EQ(chi_formula(ctx, n, e1, e2), 0) << "c=" << g.c << " n=" << n << " e=(" << e1 << "," << e2 << ")";
            }
        }
    }
}

TEST(ChiFormula, NonnegativeSummandsWhenCE2CoversPreviousTerm) {
    for (std::int64_t c : {3, 4}) {
        ClusterContext ctx(c);
        for (std::int64_t n = 3; n <= (c == 3 ? 7 : 6); ++n) {
            for (std::int64_t e2 = 0; e2 <= ctx.a(n - 2); ++e2) {
                if (c * e2 < ctx.a(n - 3)) continue;
                for (std::int64_t e1 = 0; e1 <= ctx.a(n - 1); ++e1) {
                    for (const auto& s : chi_formula_summands(ctx, n, e1, e2)) EXPECT_GT(s.sign(), 0);
                    EXPECT_GE(chi_formula(ctx, n, e1, e2).sign(), 0);
                }
            }
        }
    }
}

TEST(ChiFormula, RawAndWindowedAgreeWithoutNegativeTops) {
    // The two sums only differ on tuples with a_{n-2} - c s_{n-3} < 0; none exist for n <= 5.
    for (const auto& g : kGrid) {
        ClusterContext ctx(g.c);
        for (std::int64_t n = 3; n <= 5; ++n)
            for (std::int64_t e1 = -2; e1 <= ctx.a(n - 1) + 2; ++e1)
                for (std::int64_t e2 = -2; e2 <= ctx.a(n - 2) + 2; ++e2)
                    EXPECT_EQ(chi_formula_raw(ctx, n, e1, e2), chi_formula(ctx, n, e1, e2));
    }
}

TEST(ClusterVarFormula, Examples) {
    ClusterContext c2(2), c3(3);
    EXPECT_EQ(cluster_var_formula(c2, 4), cluster_var_recurrence(c2, 4));
    EXPECT_EQ(cluster_var_formula(c3, 3), P::from_terms({{{-1, 0}, 1}, {{-1, 3}, 1}}));
    EXPECT_EQ(cluster_var_formula(c2, 7).coeff(-5, -4), 1);
    EXPECT_EQ(chi_from_expansion(c2, 7).at(0, 4), 1);
}

TEST(ClusterVarFormula, OracleEquivalence) {
    for (const auto& g : kGrid) {
        ClusterContext ctx(g.c);
        for (std::int64_t n = 3; n <= g.n_max; ++n)
            EXPECT_EQ(cluster_var_formula(ctx, n), cluster_var_recurrence(ctx, n)) << "c=" << g.c << " n=" << n;
    }
}

TEST(ClusterVarFormula, ScatterMatchesPerCellQueries) {
    for (const auto& g : kGrid) {
        ClusterContext ctx(g.c);
        for (std::int64_t n = 3; n <= std::min<std::int64_t>(g.n_max, 7); ++n) {
            const ChiTable t = chi_table_formula(ctx, n);
            for (std::int64_t e1 = 0; e1 <= t.dim.d1; ++e1)
                for (std::int64_t e2 = 0; e2 <= t.dim.d2; ++e2)
                    if (e2 * t.dim.d1 - e1 * t.dim.d2 >= 0) {
                        EXPECT_EQ(t.at(e1, e2), chi_formula(ctx, n, e1, e2));
                    }
        }
    }
}

TEST(ClusterVarFormulaV2, Examples) {
    ClusterContext c2(2), c3(3);
    EXPECT_EQ(cluster_var_formula_v2(c2, 5), cluster_var_formula(c2, 5));
    EXPECT_EQ(cluster_var_formula_v2(c3, 4), cluster_var_recurrence(c3, 4));
    EXPECT_EQ(cluster_var_formula_v2(c2, 3), P::from_terms({{{-1, 0}, 1}, {{-1, 2}, 1}}));
}

TEST(ClusterVarFormulaV2, MatchesFormula) {
    for (const auto& g : kGrid) {
        ClusterContext ctx(g.c);
        for (std::int64_t n = 3; n <= g.n_max; ++n)
            EXPECT_EQ(cluster_var_formula_v2(ctx, n), cluster_var_formula(ctx, n)) << "c=" << g.c << " n=" << n;
    }
}

TEST(ClusterVarFormula, Preconditions) {
    EXPECT_THROW(cluster_var_formula(ClusterContext(2), 2), DomainError);
    EXPECT_THROW(cluster_var_formula_v2(ClusterContext(1), 4), DomainError);
    EXPECT_THROW(chi_formula(ClusterContext(2), 2, 0, 0), DomainError);
}
