#include <cstdint>
#include <random>

#include <gtest/gtest.h>

#include "rank2/laurent.hpp"
#include "rank2/recurrence.hpp"

using namespace rank2;

namespace {

using P = LaurentPoly2;

P random_poly(std::mt19937_64& rng, bool nonzero = false) {
    std::uniform_int_distribution<int> nterms(nonzero ? 1 : 0, 8), expo(-10, 10), coeff(-99, 99);
    for (;;) {
        P p;
        const int k = nterms(rng);
        for (int i = 0; i < k; ++i) p.add_term({expo(rng), expo(rng)}, coeff(rng));
        if (!nonzero || !p.is_zero()) return p;
    }
}

}  // namespace

TEST(Laurent, AddCancels) {
    EXPECT_TRUE(lp_add(P::x1(), -P::x1()).is_zero());
    EXPECT_EQ(lp_add(P::x1(), -P::x1()).size(), 0u);
}

TEST(Laurent, UnitMonomials) { EXPECT_EQ(lp_mul(P::x2(-1), P::x2()), P::constant(1)); }

TEST(Laurent, PowOfBinomial) {
    const P base = P::from_terms({{{0, 0}, 1}, {{0, 2}, 1}});
    EXPECT_EQ(lp_pow(base, 2), P::from_terms({{{0, 0}, 1}, {{0, 2}, 2}, {{0, 4}, 1}}));
    EXPECT_EQ(lp_pow(base, 0), P::constant(1));
    EXPECT_THROW(lp_pow(base, -1), DomainError);
}

TEST(Laurent, NoZeroEntriesStored) {
    P p;
    p.add_term({1, 1}, 3);
    p.add_term({1, 1}, -3);
    p.add_term({0, 0}, 0);
    EXPECT_TRUE(p.is_zero());
}

TEST(Laurent, ExactDivByMonomial) {
    const P num = P::from_terms({{{2, 1}, 1}, {{0, 1}, 1}});
    EXPECT_EQ(lp_exact_div(num, P::x2()), P::from_terms({{{2, 0}, 1}, {{0, 0}, 1}}));
}

TEST(Laurent, InexactQuotientReported) {
    const P q = P::from_terms({{{0, 2}, 1}, {{0, 0}, 1}});
    const P num = lp_pow(q, 2) + P::x1(2);
    try {
        (void)lp_exact_div(num, q);
        FAIL() << "expected InexactQuotient";
    } catch (const InexactQuotient& ex) {
        EXPECT_FALSE(ex.coeff().is_zero());
    }
}

TEST(Laurent, ExactDivConstructedProduct) {
    const P a = P::from_terms({{{0, 2}, 1}, {{0, 0}, 1}});
    const P b = P::from_terms({{{1, 0}, 1}, {{-1, 0}, 1}});
    EXPECT_EQ(lp_exact_div(a * b, b), a);
}

TEST(Laurent, DivisionByZero) { EXPECT_THROW(lp_exact_div(P::x1(), P{}), DivisionByZero); }

TEST(Laurent, EvalExamples) {
    EXPECT_EQ(lp_eval_int(P::from_terms({{{0, 0}, 1}, {{0, 2}, 1}}), 1, 1), 2);
    EXPECT_EQ(lp_eval_int(P::from_terms({{{-1, 0}, 1}, {{-1, 2}, 1}}), 1, 1), 2);
    EXPECT_EQ(lp_eval_int(cluster_var_recurrence(ClusterContext(2), 6), 1, 1), 34);
    EXPECT_EQ(lp_eval_int(P::x1(-2), 2, 5), Rational(1, 4));
    EXPECT_THROW(lp_eval_int(P::x1(-1), 0, 1), DomainError);
    EXPECT_EQ(lp_eval_int(P::x1(3), 0, 1), 0);
}

TEST(Laurent, CoeffAndSupport) {
    const P p = P::from_terms({{{0, 0}, 1}, {{0, 2}, 2}});
    EXPECT_EQ(lp_coeff(p, 0, 2), 2);
    EXPECT_EQ(lp_coeff(p, 1, 0), 0);
    const auto sup = lp_support(P::x1(-1) + P::x2());
    ASSERT_EQ(sup.size(), 2u);
    EXPECT_EQ(sup[0], (Exponent{-1, 0}));
    EXPECT_EQ(sup[1], (Exponent{0, 1}));
}

TEST(Laurent, MinMaxExponents) {
    const P p = P::from_terms({{{-3, 4}, 1}, {{2, -1}, 5}});
    EXPECT_EQ(*p.min_exponents(), (Exponent{-3, -1}));
    EXPECT_EQ(*p.max_exponents(), (Exponent{2, 4}));
    EXPECT_FALSE(P{}.min_exponents().has_value());
}

TEST(LaurentProperty, RingAxioms) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const P a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_TRUE((a - a).is_zero());
    }
}

TEST(LaurentProperty, DivisionRoundTrip) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const P p = random_poly(rng);
        const P q = random_poly(rng, true);
        EXPECT_EQ(lp_exact_div(p * q, q), p);
    }
}

TEST(LaurentProperty, PowIsRepeatedMul) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        P p;
        std::uniform_int_distribution<int> expo(-3, 3), coeff(-9, 9);
        for (int i = 0; i < 3; ++i) p.add_term({expo(rng), expo(rng)}, coeff(rng));
        P acc = P::constant(1);
        for (int k = 0; k <= 6; ++k) {
            EXPECT_EQ(lp_pow(p, k), acc) << k;
            acc = acc * p;
        }
    }
}

TEST(LaurentProperty, DenseAndSparseProductsAgree) {
    // Wide, sparse operands force the map path; compact ones the dense buffer.
    const P wide = P::from_terms({{{-400000, 0}, 3}, {{400000, 7}, -2}, {{0, -300000}, 1}});
    const P small = P::from_terms({{{1, 1}, 2}, {{-1, 0}, 5}});
    P expected;
    for (const auto& [ea, va] : wide.terms())
        for (const auto& [eb, vb] : small.terms()) expected.add_term(ea + eb, va * vb);
    EXPECT_EQ(wide * small, expected);
}
