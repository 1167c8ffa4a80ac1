#pragma once

/**
 * @file ratfunc.hpp
 * @brief Canonical rational functions in q over the integers.
 *
 * A RatFunc is num/den with
 *   - den non-zero with positive leading coefficient,
 *   - gcd(num, den) = 1 in Q[q] and the integer contents of num and den coprime,
 *   - 0 represented as 0/1.
 * Two RatFunc values are equal as functions iff their representations are
 * identical, so operator== is structural.
 */

#include <stdexcept>
#include <string>
#include <utility>

#include "poly.hpp"

namespace qcongruence {

class RatFunc {
public:
    RatFunc() : den_{1} {}
    RatFunc(Poly p) : num_(std::move(p)), den_{1} {}  // NOLINT(implicit)
    RatFunc(long c) : num_{c}, den_{1} {}              // NOLINT(implicit)

    /// Canonical form of num/den. Throws std::domain_error when den is zero.
    static RatFunc normalize(Poly num, Poly den) {
        if (den.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        if (num.is_zero()) return RatFunc();

        const std::size_t qs = std::min(num.low_order(), den.low_order());
        num.shift_down(qs);
        den.shift_down(qs);

        Poly g = poly_gcd(num, den);
        if (g.degree() > 0) {
            num = *divide_exact(num, g);
            den = *divide_exact(den, g);
        }
        return from_coprime(std::move(num), std::move(den));
    }

    /// Builds a value whose num and den are already coprime in Q[q]; only the
    /// integer content and sign are fixed up.
    static RatFunc from_coprime(Poly num, Poly den) {
        if (den.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        if (num.is_zero()) return RatFunc();
        Integer c = gcd(num.content(), den.content());
        if (sgn(den.leading()) < 0) c = -c;
        if (c != 1) {
            num.divide_coefficients(c);
            den.divide_coefficients(c);
        }
        RatFunc r;
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        return r;
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    /// q^e for any integer e.
    static RatFunc q_power(long e) {
        if (e >= 0) return RatFunc(Poly::monomial(1, static_cast<std::size_t>(e)));
        return from_coprime(Poly{1}, Poly::monomial(1, static_cast<std::size_t>(-e)));
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return normalize(a.num_ + b.num_, a.den_);
        Poly g = poly_gcd(a.den_, b.den_);
        Poly bd = *divide_exact(b.den_, g);
        Poly ad = *divide_exact(a.den_, g);
        return normalize(a.num_ * bd + b.num_ * ad, a.den_ * bd);
    }

    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return RatFunc();
        // Cross-cancel so that the product is coprime without a full gcd.
        Poly g1 = poly_gcd(a.num_, b.den_);
        Poly g2 = poly_gcd(b.num_, a.den_);
        Poly n1 = *divide_exact(a.num_, g1), d2 = *divide_exact(b.den_, g1);
        Poly n2 = *divide_exact(b.num_, g2), d1 = *divide_exact(a.den_, g2);
        return from_coprime(n1 * n2, d1 * d2);
    }

    RatFunc inverse() const {
        if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
        return from_coprime(den_, num_);
    }

    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    /// Integer power; negative exponents invert (zero base rejected).
    RatFunc pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        RatFunc result(1), base = *this;
        while (e) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return result;
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    /// Value at q = t; throws if the denominator vanishes there.
    Rational evaluate(const Rational& t) const {
        Rational d = den_.evaluate(t);
        if (sgn(d) == 0) throw std::domain_error("RatFunc: denominator vanishes at evaluation point");
        return num_.evaluate(t) / d;
    }

    std::string to_string() const {
        if (den_ == Poly{1}) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    Poly num_;
    Poly den_;
};

/// Free-function spelling of RatFunc::normalize.
inline RatFunc ratfunc_normalize(Poly num, Poly den) {
    return RatFunc::normalize(std::move(num), std::move(den));
}

}  // namespace qcongruence
