#include <gtest/gtest.h>

#include <random>

#include <qcongruence/poly.hpp>

#include "oracle.hpp"

using qcongruence::Integer;
using qcongruence::Poly;
using qcongruence::Rational;

namespace {

Poly random_poly(std::mt19937_64& gen, int max_degree, long bound) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<long> coef(-bound, bound);
    std::vector<Integer> c(static_cast<std::size_t>(deg(gen)) + 1);
    for (auto& x : c) x = coef(gen);
    if (sgn(c.back()) == 0) c.back() = 1;
    return Poly(std::move(c));
}

oracle::QPoly as_q(const Poly& p) {
    return oracle::to_qpoly({p.coeffs().begin(), p.coeffs().end()});
}

bool divides(const Poly& d, const Poly& a) { return a.is_zero() || qcongruence::divide_exact(a, d).has_value(); }

}  // namespace

TEST(Poly, CanonicalRepresentation) {
    Poly z{0, 0, 0};
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.degree(), -1);
    EXPECT_EQ(z.size(), 0u);
    Poly p{1, 2, 0, 0};
    EXPECT_EQ(p.degree(), 1);
    EXPECT_EQ(p, (Poly{1, 2}));
    EXPECT_EQ((p - p).size(), 0u);
}

TEST(Poly, Arithmetic) {
    Poly a{1, 1};   // 1 + q
    Poly b{-1, 1};  // q - 1
    EXPECT_EQ(a * b, (Poly{-1, 0, 1}));
    EXPECT_EQ(a + b, (Poly{0, 2}));
    EXPECT_EQ(a * Integer(3), (Poly{3, 3}));
    EXPECT_EQ(Poly::binomial(3), (Poly{-1, 0, 0, 1}));
    EXPECT_EQ(Poly::monomial(5, 2), (Poly{0, 0, 5}));
    EXPECT_EQ(Poly({2, -3, 1}).evaluate(Rational(1, 2)), Rational(3, 4));
    EXPECT_EQ(Poly({1, 0, 2}).to_string(), "2*q^2 + 1");
    EXPECT_EQ(Poly({0, -1}).to_string(), "-q");
}

TEST(Poly, BinomialKernels) {
    Poly p{3, -1, 4, 1, -5};
    Poly q = p;
    q.mul_binomial(3);
    EXPECT_EQ(q, p * Poly::binomial(3));
    q.div_binomial(3);
    EXPECT_EQ(q, p);
    Poly r{1, 1};
    EXPECT_THROW(r.div_binomial(2), std::domain_error);
    EXPECT_THROW(r.mul_binomial(0), std::invalid_argument);
}

TEST(Poly, Shifts) {
    Poly p{1, 2};
    p.shift_up(3);
    EXPECT_EQ(p, (Poly{0, 0, 0, 1, 2}));
    EXPECT_EQ(p.low_order(), 3u);
    p.shift_down(3);
    EXPECT_EQ(p, (Poly{1, 2}));
    EXPECT_THROW(p.shift_down(1), std::domain_error);
}

TEST(Poly, ExactDivision) {
    Poly a = Poly{1, 2, 3} * Poly{-2, 0, 5};
    auto q = qcongruence::divide_exact(a, Poly{-2, 0, 5});
    ASSERT_TRUE(q);
    EXPECT_EQ(*q, (Poly{1, 2, 3}));
    EXPECT_FALSE(qcongruence::divide_exact(Poly{1, 0, 1}, Poly{2, 1}));
    // divisible over Q but not over Z
    EXPECT_FALSE(qcongruence::divide_exact(Poly{1, 1}, Poly{2, 2}));
    EXPECT_THROW(qcongruence::divide_exact(a, Poly{}), std::domain_error);
}

TEST(Poly, ContentAndPrimitivePart) {
    Poly p{-6, 0, -4};
    EXPECT_EQ(p.content(), 2);
    EXPECT_EQ(p.primitive_part(), (Poly{3, 0, 2}));
    EXPECT_EQ(Poly{}.content(), 0);
}

TEST(PolyGcd, Examples) {
    using qcongruence::poly_gcd;
    EXPECT_EQ(poly_gcd(Poly{-1, 0, 1}, Poly{-1, 1}), (Poly{-1, 1}));
    EXPECT_EQ(poly_gcd(Poly{1, 1}, Poly{2, 1}), (Poly{1}));
    EXPECT_EQ(poly_gcd(Poly::binomial(6), Poly::binomial(4)), (Poly{-1, 0, 1}));
    EXPECT_TRUE(poly_gcd(Poly{}, Poly{}).is_zero());
    EXPECT_EQ(poly_gcd(Poly{}, Poly{-4, -2}), (Poly{2, 1}));
}

TEST(PolyGcd, AgreesWithRationalEuclid) {
    // gcd(q^6 - 1, q^4 - 1) by Euclid over Q
    auto g = oracle::gcd(oracle::binomial(6), oracle::binomial(4));
    EXPECT_EQ(g, oracle::from_ints({-1, 0, 1}));

    std::mt19937_64 gen(20240611);
    for (int trial = 0; trial < 60; ++trial) {
        Poly c = random_poly(gen, 3, 4);
        Poly a = random_poly(gen, 5, 6) * c;
        Poly b = random_poly(gen, 5, 6) * c;
        Poly g = qcongruence::poly_gcd(a, b);
        auto expected = oracle::gcd(as_q(a), as_q(b));
        // same up to a rational scalar: compare the monic forms
        auto mine = as_q(g);
        for (auto& x : mine) x /= mine.back();
        EXPECT_EQ(mine, expected) << a.to_string() << " / " << b.to_string();
    }
}

TEST(PolyGcd, DividesAndIsMultiplicative) {
    std::mt19937_64 gen(77);
    for (int trial = 0; trial < 80; ++trial) {
        Poly a = random_poly(gen, 6, 9);
        Poly b = random_poly(gen, 6, 9);
        Poly c = random_poly(gen, 3, 5);
        if (c.is_constant()) c = Poly{1, 1};
        Poly g = qcongruence::poly_gcd(a, b);
        EXPECT_TRUE(divides(g, a));
        EXPECT_TRUE(divides(g, b));
        EXPECT_EQ(g.content(), 1);
        EXPECT_GT(sgn(g.leading()), 0);
        EXPECT_EQ(qcongruence::poly_gcd(a * c, b * c), (g * c).primitive_part());
    }
}

TEST(PolyGcd, LargeCyclotomicProducts) {
    Poly a = Poly::binomial(120) * Poly::binomial(77);
    Poly b = Poly::binomial(90) * Poly::binomial(33);
    Poly g = qcongruence::poly_gcd(a, b);
    EXPECT_TRUE(divides(g, a));
    EXPECT_TRUE(divides(g, b));
    auto mine = as_q(g);
    for (auto& x : mine) x /= mine.back();
    EXPECT_EQ(mine, oracle::gcd(as_q(a), as_q(b)));
}
