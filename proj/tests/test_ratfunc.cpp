#include <gtest/gtest.h>

#include <random>

#include <qcongruence/cyclotomic.hpp>
#include <qcongruence/ratfunc.hpp>

using namespace qcongruence;

namespace {

RatFunc random_ratfunc(std::mt19937_64& gen) {
    std::uniform_int_distribution<long> coef(-5, 5), deg(0, 4);
    auto poly = [&] {
        std::vector<Integer> c(static_cast<std::size_t>(deg(gen)) + 1);
        for (auto& x : c) x = coef(gen);
        c.back() = c.back() == 0 ? 1 : c.back();
        return Poly(std::move(c));
    };
    Poly common = poly();
    return RatFunc::normalize(poly() * common, poly() * common);
}

void expect_canonical(const RatFunc& f) {
    ASSERT_FALSE(f.den().is_zero());
    if (f.is_zero()) {
        EXPECT_EQ(f.den(), Poly{1});
        return;
    }
    EXPECT_GT(sgn(f.den().leading()), 0);
    EXPECT_EQ(poly_gcd(f.num(), f.den()).degree(), 0);
    EXPECT_EQ(gcd(f.num().content(), f.den().content()), 1);
}

}  // namespace

TEST(RatFunc, NormalizeExamples) {
    RatFunc a = ratfunc_normalize(Poly{-1, 0, 1}, Poly{-1, 1});
    EXPECT_EQ(a.num(), (Poly{1, 1}));
    EXPECT_EQ(a.den(), Poly{1});

    RatFunc z = ratfunc_normalize(Poly{}, Poly::monomial(1, 5));
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.den(), Poly{1});

    RatFunc s = ratfunc_normalize(Poly{-1, 1}, Poly{1, -1});
    EXPECT_EQ(s.num(), Poly{-1});
    EXPECT_EQ(s.den(), Poly{1});

    EXPECT_THROW(ratfunc_normalize(Poly{1}, Poly{}), std::domain_error);
}

TEST(RatFunc, ContentAndQPowers) {
    RatFunc f = RatFunc::normalize(Poly{0, 0, 6}, Poly{0, 4, 4});  // 6q^2 / (4q + 4q^2)
    EXPECT_EQ(f.num(), (Poly{0, 3}));
    EXPECT_EQ(f.den(), (Poly{2, 2}));
    EXPECT_EQ(RatFunc::q_power(-3) * RatFunc::q_power(5), RatFunc::q_power(2));
    EXPECT_EQ(RatFunc::q_power(-2).den(), (Poly{0, 0, 1}));
}

TEST(RatFunc, FieldProperties) {
    std::mt19937_64 gen(314159);
    for (int trial = 0; trial < 100; ++trial) {
        RatFunc f = random_ratfunc(gen), g = random_ratfunc(gen), h = random_ratfunc(gen);
        expect_canonical(f + g);
        expect_canonical(f * g);
        EXPECT_EQ((f + g) - g, f);
        EXPECT_EQ(f + g, g + f);
        EXPECT_EQ((f * g) * h, f * (g * h));
        EXPECT_EQ(f * (g + h), f * g + f * h);
        if (!g.is_zero()) {
            EXPECT_EQ((f * g) / g, f);
            EXPECT_EQ(g * g.inverse(), RatFunc(1));
        }
    }
}

TEST(RatFunc, Powers) {
    RatFunc f = RatFunc::normalize(Poly{1, 1}, Poly{-1, 0, 1});  // 1/(q-1)
    EXPECT_EQ(f.pow(0), RatFunc(1));
    EXPECT_EQ(f.pow(3) * f.pow(-3), RatFunc(1));
    EXPECT_EQ(f.pow(-2).num(), (Poly{1, -2, 1}));
    EXPECT_THROW(RatFunc().pow(-1), std::domain_error);
    EXPECT_THROW(RatFunc().inverse(), std::domain_error);
}

TEST(RatFunc, Evaluate) {
    RatFunc f = RatFunc::normalize(Poly{1, 1}, Poly{-2, 1});
    EXPECT_EQ(f.evaluate(Rational(3)), Rational(4));
    EXPECT_THROW(f.evaluate(Rational(2)), std::domain_error);
}

TEST(RatFunc, ToString) {
    EXPECT_EQ(RatFunc(Poly{1, 1}).to_string(), "q + 1");
    EXPECT_EQ(RatFunc::normalize(Poly{1}, Poly{0, 1}).to_string(), "(1)/(q)");
    EXPECT_EQ(RatFunc().to_string(), "0");
}
