#include <cstdint>

#include <gtest/gtest.h>

#include "rank2/combinat.hpp"

using namespace rank2;

namespace {

BigInt factorial(std::int64_t k) {
    BigInt r(1);
    for (std::int64_t i = 2; i <= k; ++i) r *= i;
    return r;
}

BigInt plain_binomial(std::int64_t n, std::int64_t k) {
    BigInt r(1);
    for (std::int64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

TEST(ModBinom, Examples) {
    EXPECT_EQ(mod_binom(5, 2), 10);
    EXPECT_EQ(mod_binom(2, 5), 0);
    EXPECT_EQ(mod_binom(-2, -3), -2);
    EXPECT_EQ(mod_binom(3, 3), 1);
}

TEST(ModBinom, MatchesFactorialFormula) {
    for (std::int64_t A = 0; A <= 30; ++A)
        for (std::int64_t B = 0; B <= A; ++B)
            EXPECT_EQ(mod_binom(A, B), factorial(A) / (factorial(A - B) * factorial(B))) << A << ' ' << B;
}

TEST(ModBinom, VanishingCases) {
    for (std::int64_t A = 0; A <= 20; ++A)
        for (std::int64_t B = -20; B < 0; ++B) EXPECT_EQ(mod_binom(A, B), 0) << A << ' ' << B;
    for (std::int64_t A = -15; A <= 15; ++A) {
        EXPECT_EQ(mod_binom(A, A), 1);
        for (std::int64_t B = A + 1; B <= A + 10; ++B) EXPECT_EQ(mod_binom(A, B), 0);
    }
}

TEST(ModBinom, PascalRule) {
    for (std::int64_t A = 1; A <= 20; ++A)
        for (std::int64_t B = -10; B < A; ++B)
            EXPECT_EQ(mod_binom(A, B), mod_binom(A - 1, B - 1) + mod_binom(A - 1, B)) << A << ' ' << B;
}

TEST(ModBinom, NegativeTopIsGeneralizedBinomial) {
    // C(-3, 4) = (-3)(-4)(-5)(-6) / 4! = 15
    EXPECT_EQ(mod_binom(-3, -7), 15);
    // C(-1, k) = (-1)^k
    for (std::int64_t k = 1; k <= 12; ++k) EXPECT_EQ(mod_binom(-1, -1 - k), (k % 2 == 0) ? 1 : -1);
}

TEST(ModBinomCache, AgreesWithDirect) {
    ModBinomCache cache;
    for (std::int64_t A = -8; A <= 12; ++A)
        for (std::int64_t B = -12; B <= 12; ++B) {
            EXPECT_EQ(cache(A, B), mod_binom(A, B));
            EXPECT_EQ(cache(A, B), mod_binom(A, B));
        }
}

TEST(ASeq, Examples) {
    EXPECT_EQ(a_seq(ClusterContext(2), 6), 5);
    EXPECT_EQ(a_seq(ClusterContext(3), 5), 21);
    EXPECT_EQ(a_seq(ClusterContext(3), 0), -1);
}

TEST(ASeq, NegativeIndexRejected) {
    ClusterContext ctx(3);
    EXPECT_THROW(a_seq(ctx, -1), DomainError);
    EXPECT_THROW(ctx.a(-1), DomainError);
}

TEST(ASeq, DeterminantIdentity) {
    for (std::int64_t c = 2; c <= 5; ++c) {
        ClusterContext ctx(c);
        for (std::int64_t n = 3; n <= 50; ++n)
            EXPECT_EQ(ctx.a_exact(n - 1) * ctx.a_exact(n - 3) - ctx.a_exact(n - 2) * ctx.a_exact(n - 2), -1)
                << "c=" << c << " n=" << n;
    }
}

TEST(ASeq, LinearForCTwo) {
    ClusterContext ctx(2);
    for (std::int64_t n = 1; n <= 50; ++n) EXPECT_EQ(ctx.a_exact(n), n - 1);
}

TEST(ASeq, ClosedFormForLargerC) {
    for (std::int64_t c = 3; c <= 6; ++c) {
        ClusterContext ctx(c);
        for (std::int64_t n = 2; n <= 20; ++n) {
            BigInt sum(0);
            for (std::int64_t i = 0; n - 2 - 2 * i >= 0; ++i) {
                BigInt term = plain_binomial(n - 2 - i, i) * boost::multiprecision::pow(BigInt(c), static_cast<unsigned>(n - 2 - 2 * i));
                sum += (i % 2 == 0) ? term : BigInt(-term);
            }
            EXPECT_EQ(ctx.a_exact(n), sum) << "c=" << c << " n=" << n;
        }
    }
}

TEST(ASeq, MachineWordTableMatchesExact) {
    ClusterContext ctx(4);
    for (std::int64_t n = 0; n <= 25; ++n) EXPECT_EQ(BigInt(ctx.a(n)), ctx.a_exact(n));
}

TEST(SPrefix, Examples) {
    ClusterContext c2(2), c3(3);
    SPrefix p = s_prefix_extend(c2, SPrefix{}, 0);
    EXPECT_EQ(p.s(1), 0);

    SPrefix q = s_prefix_extend(c2, s_prefix_extend(c2, SPrefix{}, 0), 1);
    q = s_prefix_extend(c2, q, 1);
    EXPECT_EQ(q.s(3), 3);

    SPrefix r = s_prefix_extend(c3, s_prefix_extend(c3, SPrefix{}, 0), 2);
    EXPECT_EQ(r.s(2), 2);
}

TEST(SPrefix, RecurrenceMatchesDefinition) {
    ClusterContext ctx(3);
    const std::int64_t ts[] = {0, 2, 1, 0, 3, 1};
    SPrefix p;
    for (auto t : ts) p = s_prefix_extend(ctx, p, t);
    for (std::int64_t i = 1; i <= 6; ++i) {
        std::int64_t direct = 0;
        for (std::int64_t j = 0; j < i; ++j) direct += ctx.a(i - j + 1) * ts[j];
        EXPECT_EQ(p.s(i), direct) << i;
    }
    EXPECT_EQ(p.s(0), 0);
    EXPECT_EQ(p.s(-3), 0);
    EXPECT_THROW(p.s(7), DomainError);
}

TEST(EulerForm, Examples) {
    EXPECT_EQ(euler_form(ClusterContext(2), {0, 0}, {1, 1}), 0);
    EXPECT_EQ(euler_form(ClusterContext(2), {1, 0}, {0, 1}), -2);
    EXPECT_EQ(euler_form(ClusterContext(3), {1, 1}, {1, 1}), -1);
}
