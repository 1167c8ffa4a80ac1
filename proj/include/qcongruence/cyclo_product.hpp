#pragma once

/**
 * @file cyclo_product.hpp
 * @brief Values of the form c * q^s * prod_m Phi_m(q)^{e_m}, and sums of them.
 *
 * Every q-shifted factorial whose base is an integer power of q factors this
 * way, because 1 - q^a = -prod_{m | a} Phi_m for a > 0 and
 * 1 - q^{-a} = q^{-a} prod_{m | a} Phi_m. Products and quotients are then
 * exponent bookkeeping, and a sum only needs polynomial arithmetic once, when
 * its terms are brought over the common cyclotomic denominator.
 */

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "cyclotomic.hpp"
#include "poly.hpp"
#include "ratfunc.hpp"

namespace qcongruence {

class CycloProduct {
public:
    CycloProduct() : coeff_(1) {}

    static CycloProduct zero() {
        CycloProduct p;
        p.coeff_ = 0;
        return p;
    }

    static CycloProduct constant(const Rational& c) {
        CycloProduct p;
        p.coeff_ = c;
        return p;
    }

    static CycloProduct q_power(long s) {
        CycloProduct p;
        p.qpow_ = s;
        return p;
    }

    static CycloProduct cyclotomic_power(long m, long e) {
        CycloProduct p;
        if (e != 0) p.exps_[m] = e;
        return p;
    }

    /// 1 - q^a (zero when a = 0).
    static CycloProduct one_minus_q_power(long a) {
        if (a == 0) return zero();
        CycloProduct p;
        if (a > 0) {
            p.coeff_ = -1;
        } else {
            p.qpow_ = a;
            a = -a;
        }
        for (long m : divisors(a)) p.exps_[m] = 1;
        return p;
    }

    /// 1 + q^a = (1 - q^{2a}) / (1 - q^a); equals 2 when a = 0.
    static CycloProduct one_plus_q_power(long a) {
        if (a == 0) return constant(2);
        CycloProduct p = one_minus_q_power(2 * a);
        p /= one_minus_q_power(a);
        return p;
    }

    /// [n] = (1 - q^n)/(1 - q) for any integer n; [0] = 0.
    static CycloProduct q_integer(long n) {
        if (n == 0) return zero();
        CycloProduct p = one_minus_q_power(n);
        p /= one_minus_q_power(1);
        return p;
    }

    bool is_zero() const { return sgn(coeff_) == 0; }
    const Rational& coefficient() const { return coeff_; }
    long q_exponent() const { return qpow_; }
    const std::map<long, long>& exponents() const { return exps_; }

    long exponent_of(long m) const {
        auto it = exps_.find(m);
        return it == exps_.end() ? 0 : it->second;
    }

    CycloProduct& operator*=(const CycloProduct& o) {
        if (is_zero() || o.is_zero()) return *this = zero();
        coeff_ *= o.coeff_;
        qpow_ += o.qpow_;
        for (auto [m, e] : o.exps_) bump(m, e);
        return *this;
    }

    CycloProduct& operator/=(const CycloProduct& o) {
        if (o.is_zero()) throw std::domain_error("CycloProduct: division by zero");
        if (is_zero()) return *this;
        coeff_ /= o.coeff_;
        qpow_ -= o.qpow_;
        for (auto [m, e] : o.exps_) bump(m, -e);
        return *this;
    }

    friend CycloProduct operator*(CycloProduct a, const CycloProduct& b) { return a *= b; }
    friend CycloProduct operator/(CycloProduct a, const CycloProduct& b) { return a /= b; }

    CycloProduct operator-() const {
        CycloProduct p = *this;
        p.coeff_ = -p.coeff_;
        return p;
    }

    CycloProduct pow(long e) const {
        if (is_zero()) {
            if (e < 0) throw std::domain_error("CycloProduct: negative power of zero");
            return e == 0 ? CycloProduct() : zero();
        }
        CycloProduct p;
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), coeff_.get_num_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
        mpz_pow_ui(den.get_mpz_t(), coeff_.get_den_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
        p.coeff_ = e < 0 ? Rational(den, num) : Rational(num, den);
        p.coeff_.canonicalize();
        p.qpow_ = qpow_ * e;
        for (auto [m, x] : exps_) p.exps_[m] = x * e;
        return p;
    }

    RatFunc to_ratfunc() const;

private:
    void bump(long m, long e) {
        if (e == 0) return;
        auto [it, inserted] = exps_.try_emplace(m, 0);
        it->second += e;
        if (it->second == 0) exps_.erase(it);
    }

    Rational coeff_;
    long qpow_ = 0;
    std::map<long, long> exps_;
};

/**
 * Multiplies base by prod_m Phi_m^{e_m} (all e_m >= 0) using only binomial
 * kernels: Phi_m = prod_{a | m} (q^a - 1)^{mu(m/a)}, so the product is a
 * product of powers of q^a - 1 whose exponents come from Moebius inversion.
 * All multiplications run before the exact divisions, so every division in
 * the sequence is exact.
 */
inline Poly expand_cyclotomic_product(Poly base, const std::map<long, long>& exps) {
    std::map<long, long> binom;
    for (auto [m, e] : exps) {
        if (e < 0) throw std::invalid_argument("expand_cyclotomic_product: negative exponent");
        if (e == 0) continue;
        for (long a : divisors(m)) {
            int mu = moebius(m / a);
            if (mu != 0) binom[a] += mu * e;
        }
    }
    for (auto [a, g] : binom)
        for (long i = 0; i < g; ++i) base.mul_binomial(static_cast<std::size_t>(a));
    for (auto [a, g] : binom)
        for (long i = 0; i < -g; ++i) base.div_binomial(static_cast<std::size_t>(a));
    return base;
}

namespace detail {

/// Canonical RatFunc for (P * q^s * prod Phi_m^{F_m}) / L, with every
/// Phi_m having F_m < 0 still possibly dividing P. Cancels those first.
inline RatFunc assemble(Poly p, long s, std::map<long, long> f, const Integer& scale) {
    if (p.is_zero()) return RatFunc();
    for (auto& [m, e] : f)
        if (e < 0) e += strip_cyclotomic(p, m, -e);
    if (s < 0) {
        const long drop = std::min<long>(-s, static_cast<long>(p.low_order()));
        p.shift_down(static_cast<std::size_t>(drop));
        s += drop;
    }
    std::map<long, long> up, down;
    for (auto [m, e] : f) {
        if (e > 0) up[m] = e;
        if (e < 0) down[m] = -e;
    }
    if (s > 0) p.shift_up(static_cast<std::size_t>(s));
    Poly num = expand_cyclotomic_product(std::move(p), up);
    Poly den = expand_cyclotomic_product(Poly::monomial(scale, static_cast<std::size_t>(s < 0 ? -s : 0)), down);
    return RatFunc::from_coprime(std::move(num), std::move(den));
}

}  // namespace detail

inline RatFunc CycloProduct::to_ratfunc() const {
    if (is_zero()) return RatFunc();
    return detail::assemble(Poly::constant(coeff_.get_num()), qpow_, exps_, coeff_.get_den());
}

/**
 * Exact sum of CycloProduct terms.
 *
 * value() factors out the minimum exponent of every Phi_m and of q over all
 * terms, expands each remaining cofactor to a polynomial, adds them, and
 * cancels whatever cyclotomic factors of the common denominator survive in
 * the numerator. The result is the canonical RatFunc of the sum.
 */
class CycloSum {
public:
    void add(CycloProduct t) {
        ++count_;
        if (!t.is_zero()) terms_.push_back(std::move(t));
    }

    CycloSum& operator+=(CycloProduct t) {
        add(std::move(t));
        return *this;
    }

    /// Number of terms added, zeros included.
    std::size_t term_count() const { return count_; }

    RatFunc value() const {
        if (terms_.empty()) return RatFunc();
        std::map<long, long> floor;
        long s_min = terms_.front().q_exponent();
        Integer scale = 1;
        for (const auto& t : terms_) {
            s_min = std::min(s_min, t.q_exponent());
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), t.coefficient().get_den_mpz_t());
            for (auto [m, e] : t.exponents()) floor.try_emplace(m, 0);
        }
        for (auto& [m, lo] : floor) {
            lo = terms_.front().exponent_of(m);
            for (const auto& t : terms_) lo = std::min(lo, t.exponent_of(m));
        }

        Poly total;
        for (const auto& t : terms_) {
            std::map<long, long> rel;
            for (auto [m, lo] : floor)
                if (long e = t.exponent_of(m) - lo; e != 0) rel[m] = e;
            Integer c = t.coefficient().get_num() * (scale / t.coefficient().get_den());
            Poly base = Poly::monomial(c, static_cast<std::size_t>(t.q_exponent() - s_min));
            total += expand_cyclotomic_product(std::move(base), rel);
        }
        Integer g = gcd(total.content(), scale);
        if (sgn(g) != 0 && g != 1) {
            total.divide_coefficients(g);
            return detail::assemble(std::move(total), s_min, std::move(floor), scale / g);
        }
        return detail::assemble(std::move(total), s_min, std::move(floor), scale);
    }

private:
    std::vector<CycloProduct> terms_;
    std::size_t count_ = 0;
};

}  // namespace qcongruence
