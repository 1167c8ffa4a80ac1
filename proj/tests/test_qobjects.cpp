#include <gtest/gtest.h>

#include <random>

#include <qcongruence/qobjects.hpp>

#include "oracle.hpp"

using namespace qcongruence;

namespace {

/// 1 - q^x built directly from polynomials.
RatFunc one_minus(long x) {
    if (x >= 0) return RatFunc(Poly{1}) - RatFunc(Poly::monomial(1, static_cast<std::size_t>(x)));
    return RatFunc(1) - RatFunc::q_power(x);
}

}  // namespace

TEST(QPochhammer, Examples) {
    EXPECT_EQ(q_pochhammer({1, 5, 2}), RatFunc(Poly{1, -1} * (Poly{1} - Poly::monomial(1, 6))));
    EXPECT_EQ(q_pochhammer({-1, 5, 1}), RatFunc::normalize(Poly{-1, 1}, Poly{0, 1}));  // -(1-q)/q
    for (long e : {-7, 0, 3})
        for (long d : {1, 4}) EXPECT_EQ(q_pochhammer({e, d, 0}), RatFunc(1));
    EXPECT_TRUE(q_pochhammer({-4, 2, 3}).is_zero());  // hits 1 - q^0
    EXPECT_THROW(q_pochhammer({1, 0, 2}), std::invalid_argument);
    EXPECT_THROW(q_pochhammer({1, 1, -1}), std::invalid_argument);
}

TEST(QPochhammer, MatchesDirectProduct) {
    for (long e = -6; e <= 6; ++e)
        for (long d = 1; d <= 4; ++d)
            for (long k = 0; k <= 5; ++k) {
                RatFunc direct(1);
                for (long i = 0; i < k; ++i) direct *= one_minus(e + i * d);
                EXPECT_EQ(q_pochhammer({e, d, k}), direct) << e << " " << d << " " << k;
            }
}

TEST(QPochhammer, SplitProperty) {
    std::mt19937_64 gen(2718);
    std::uniform_int_distribution<long> ex(-10, 10), st(1, 6), len(0, 5);
    for (int trial = 0; trial < 80; ++trial) {
        const long e = ex(gen), d = st(gen), k1 = len(gen), k2 = len(gen);
        EXPECT_EQ(q_pochhammer({e, d, k1 + k2}), q_pochhammer({e, d, k1}) * q_pochhammer({e + k1 * d, d, k2}));
    }
}

TEST(QPochhammer, EvaluatesToNumericProduct) {
    std::mt19937_64 gen(99);
    std::uniform_int_distribution<long> ex(-8, 8), st(1, 5), len(0, 6), tn(-9, 9), td(2, 7);
    int checked = 0;
    while (checked < 50) {
        const long e = ex(gen), d = st(gen), k = len(gen);
        Rational t(tn(gen), td(gen));
        t.canonicalize();
        if (sgn(t) == 0 || t == 1 || t == -1) continue;
        Rational direct = oracle::qpoch_at(e, d, k, t);
        EXPECT_EQ(q_pochhammer({e, d, k}).evaluate(t), direct);
        ++checked;
    }
}

TEST(QPochProduct, Examples) {
    RatFunc r = q_poch_product({{{1, 5, 1}, 5}, {{5, 5, 1}, -5}});
    RatFunc expected = RatFunc(Poly{1, -1}).pow(5) / RatFunc(Poly{1} - Poly::monomial(1, 5)).pow(5);
    EXPECT_EQ(r, expected);
    EXPECT_EQ(q_poch_product(std::span<const std::pair<QPochSpec, long>>{}), RatFunc(1));
    try {
        q_poch_product({{{0, 1, 1}, -1}});
        FAIL() << "expected VanishingDenominator";
    } catch (const VanishingDenominator& e) {
        EXPECT_EQ(e.factor(), "(q^0;q^1)_1");
    }
    EXPECT_TRUE(q_poch_product({{{0, 1, 1}, 2}}).is_zero());
    EXPECT_THROW(qpoch_inverse(-3, 3, 2, "lower"), VanishingDenominator);
}

TEST(RisingFactorial, Values) {
    EXPECT_EQ(rising_factorial(Rational(1, 2), 0), 1);
    EXPECT_EQ(rising_factorial(Rational(1, 2), 2), Rational(3, 4));
    EXPECT_EQ(rising_factorial(Rational(1, 2), 3), Rational(15, 8));
    EXPECT_THROW(rising_factorial(Rational(1), -1), std::invalid_argument);
    for (long k = 0; k < 12; ++k)
        for (Rational a : {Rational(1, 2), Rational(-7, 3), Rational(5)})
            EXPECT_EQ(rising_factorial(a, k) * (a + k), rising_factorial(a, k + 1));
}

TEST(CycloProduct, FactoredFormsMatchPolynomials) {
    for (long a = -12; a <= 12; ++a) {
        if (a == 0) continue;
        EXPECT_EQ(CycloProduct::one_minus_q_power(a).to_ratfunc(), one_minus(a)) << a;
        EXPECT_EQ(CycloProduct::one_plus_q_power(a).to_ratfunc(), RatFunc(1) + RatFunc::q_power(a)) << a;
        EXPECT_EQ(CycloProduct::q_integer(a).to_ratfunc(), one_minus(a) / one_minus(1)) << a;
    }
    EXPECT_EQ(CycloProduct::one_plus_q_power(0).to_ratfunc(), RatFunc(2));
    EXPECT_TRUE(CycloProduct::q_integer(0).is_zero());
    EXPECT_THROW(CycloProduct() / CycloProduct::zero(), std::domain_error);
    EXPECT_THROW(CycloProduct::zero().pow(-1), std::domain_error);
}

TEST(CycloProduct, ExpansionThroughBinomials) {
    std::map<long, long> exps{{1, 2}, {6, 1}, {15, 3}, {105, 1}};
    Poly direct{1};
    for (auto [m, e] : exps)
        for (long i = 0; i < e; ++i) direct = direct * cyclotomic(m);
    EXPECT_EQ(expand_cyclotomic_product(Poly{1}, exps), direct);
    EXPECT_THROW(expand_cyclotomic_product(Poly{1}, {{3, -1}}), std::invalid_argument);
}

TEST(CycloSum, MatchesRatFuncAccumulation) {
    std::mt19937_64 gen(4242);
    std::uniform_int_distribution<long> ex(-9, 9), st(1, 4), len(0, 4), pw(-3, 3), cf(-5, 5);
    for (int trial = 0; trial < 40; ++trial) {
        CycloSum sum;
        RatFunc direct;
        for (int t = 0; t < 5; ++t) {
            Rational c(cf(gen), 3);
            c.canonicalize();
            CycloProduct term = CycloProduct::constant(c) * CycloProduct::q_power(ex(gen));
            RatFunc rf = term.to_ratfunc();
            for (int j = 0; j < 2; ++j) {
                const long e = ex(gen), d = st(gen), k = len(gen), p = pw(gen);
                CycloProduct f = qpoch(e, d, k);
                if (f.is_zero()) continue;
                term *= f.pow(p);
                rf *= q_pochhammer({e, d, k}).pow(p);
            }
            sum += term;
            direct += rf;
        }
        EXPECT_EQ(sum.value(), direct);
        EXPECT_EQ(sum.term_count(), 5u);
    }
}

TEST(CycloSum, CancelsToZero) {
    CycloSum s;
    s.add(qpoch(1, 2, 3));
    s.add(-qpoch(1, 2, 3));
    EXPECT_TRUE(s.value().is_zero());
    EXPECT_TRUE(CycloSum().value().is_zero());
}
