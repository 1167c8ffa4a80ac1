#pragma once

/**
 * @file poly.hpp
 * @brief Dense univariate polynomials in q with arbitrary-precision integer
 *        coefficients.
 *
 * Coefficient i holds the coefficient of q^i. The representation is kept
 * canonical: no trailing zero coefficients, and the zero polynomial is the
 * empty sequence. All arithmetic is exact.
 *
 * Besides the ring operations, the type offers the two sparse kernels the
 * rest of the engine leans on: multiplication by and exact division by a
 * binomial q^a - 1. Both are linear in the degree, which is what makes
 * products of thousands of q-shifted factorial factors affordable.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"

namespace qcongruence {

using Integer = mpz_class;
using Rational = mpq_class;

class Poly {
public:
    Poly() = default;

    explicit Poly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

    Poly(std::initializer_list<long> coeffs) {
        c_.reserve(coeffs.size());
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static Poly constant(const Integer& v) { return Poly(std::vector<Integer>{v}); }

    /// c * q^deg
    static Poly monomial(const Integer& c, std::size_t deg) {
        std::vector<Integer> v(deg + 1);
        v[deg] = c;
        return Poly(std::move(v));
    }

    /// q^a - 1
    static Poly binomial(std::size_t a) {
        Poly p = monomial(1, a);
        p.c_[0] -= 1;
        p.trim();
        return p;
    }

    bool is_zero() const { return c_.empty(); }

    /// Degree, or -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    std::size_t size() const { return c_.size(); }

    std::span<const Integer> coeffs() const { return c_; }

    Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }

    const Integer& leading() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    bool is_constant() const { return c_.size() <= 1; }

    /// Number of vanishing low-order coefficients (the q-adic valuation).
    std::size_t low_order() const {
        std::size_t i = 0;
        while (i < c_.size() && sgn(c_[i]) == 0) ++i;
        return i;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }

    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }

    Poly& operator*=(const Poly& o) {
        *this = *this * o;
        return *this;
    }

    Poly& operator*=(const Integer& s) {
        if (sgn(s) == 0) {
            c_.clear();
            return *this;
        }
        for (auto& x : c_) x *= s;
        return *this;
    }

    /// Divides every coefficient by s; s must divide each one.
    Poly& divide_coefficients(const Integer& s) {
        for (auto& x : c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), s.get_mpz_t());
        return *this;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Integer& s) { return a *= s; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Integer> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (sgn(a.c_[i]) == 0) continue;
            const mpz_srcptr ai = a.c_[i].get_mpz_t();
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                mpz_addmul(r[i + j].get_mpz_t(), ai, b.c_[j].get_mpz_t());
        }
        return Poly(std::move(r));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Multiplies by q^s.
    Poly& shift_up(std::size_t s) {
        if (!c_.empty() && s > 0) c_.insert(c_.begin(), s, Integer(0));
        return *this;
    }

    /// Divides by q^s; the low s coefficients must vanish.
    Poly& shift_down(std::size_t s) {
        if (s > low_order() && !is_zero())
            throw std::domain_error("shift_down: polynomial not divisible by q^s");
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(std::min(s, c_.size())));
        return *this;
    }

    /// Multiplies in place by q^a - 1 (a > 0).
    Poly& mul_binomial(std::size_t a) {
        if (a == 0) throw std::invalid_argument("mul_binomial: exponent must be positive");
        if (c_.empty()) return *this;
        const std::size_t old = c_.size();
        c_.resize(old + a);
        for (std::size_t i = c_.size(); i-- > 0;) {
            mpz_ptr ci = c_[i].get_mpz_t();
            if (i >= a)
                mpz_sub(ci, c_[i - a].get_mpz_t(), ci);
            else
                mpz_neg(ci, ci);
        }
        trim();
        return *this;
    }

    /// Divides in place by q^a - 1 (a > 0); throws if the division is inexact.
    Poly& div_binomial(std::size_t a) {
        if (a == 0) throw std::invalid_argument("div_binomial: exponent must be positive");
        if (c_.empty()) return *this;
        if (c_.size() <= a) throw std::domain_error("div_binomial: inexact division");
        for (std::size_t j = c_.size() - 1; j >= a; --j)
            mpz_add(c_[j - a].get_mpz_t(), c_[j - a].get_mpz_t(), c_[j].get_mpz_t());
        for (std::size_t i = 0; i < a; ++i)
            if (sgn(c_[i]) != 0) throw std::domain_error("div_binomial: inexact division");
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(a));
        trim();
        return *this;
    }

    /// gcd of the coefficients (non-negative; 0 for the zero polynomial).
    Integer content() const {
        Integer g = 0;
        for (const auto& x : c_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }

    /// Primitive part with positive leading coefficient.
    Poly primitive_part() const {
        if (is_zero()) return {};
        Poly r = *this;
        Integer g = content();
        if (sgn(leading()) < 0) g = -g;
        if (g != 1) r.divide_coefficients(g);
        return r;
    }

    Rational evaluate(const Rational& t) const {
        Rational acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
        return acc;
    }

    /// Horner evaluation modulo a word-sized prime.
    std::uint64_t evaluate_mod(std::uint64_t x, std::uint64_t p) const {
        std::uint64_t acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) {
            std::uint64_t ci = mpz_fdiv_ui(c_[i].get_mpz_t(), p);
            acc = (mulmod(acc, x, p) + ci) % p;
        }
        return acc;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            const Integer& v = c_[i];
            if (sgn(v) == 0) continue;
            Integer mag = abs(v);
            if (!out.empty()) out += sgn(v) < 0 ? " - " : " + ";
            else if (sgn(v) < 0) out += "-";
            if (mag != 1 || i == 0) out += mag.get_str();
            if (i > 0) {
                if (mag != 1) out += "*";
                out += "q";
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }

    std::vector<Integer> c_;
};

struct DivisionResult {
    Poly quotient;
    Poly remainder;
};

/// Quotient of a by b in Z[q] if b divides a exactly there, otherwise nullopt.
inline std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("divide_exact: division by zero polynomial");
    if (a.is_zero()) return Poly{};
    if (a.degree() < b.degree()) return std::nullopt;

    std::vector<Integer> rem(a.coeffs().begin(), a.coeffs().end());
    const auto bc = b.coeffs();
    const std::size_t db = static_cast<std::size_t>(b.degree());
    const std::size_t dq = static_cast<std::size_t>(a.degree() - b.degree());
    const bool monic = b.leading() == 1;
    std::vector<Integer> quot(dq + 1);
    Integer t;
    for (std::size_t k = dq + 1; k-- > 0;) {
        Integer& top = rem[k + db];
        if (sgn(top) == 0) continue;
        if (monic) {
            t = top;
        } else {
            if (!mpz_divisible_p(top.get_mpz_t(), b.leading().get_mpz_t())) return std::nullopt;
            mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), b.leading().get_mpz_t());
        }
        for (std::size_t j = 0; j <= db; ++j)
            mpz_submul(rem[k + j].get_mpz_t(), t.get_mpz_t(), bc[j].get_mpz_t());
        quot[k] = t;
    }
    for (std::size_t i = 0; i < db; ++i)
        if (sgn(rem[i]) != 0) return std::nullopt;
    return Poly(std::move(quot));
}

/// Sparse pseudo-remainder: some power of lc(b) times a, reduced modulo b.
/// Only the remainder's associate class is meaningful.
inline Poly pseudo_remainder(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("pseudo_remainder: division by zero polynomial");
    std::vector<Integer> r(a.coeffs().begin(), a.coeffs().end());
    const auto bc = b.coeffs();
    const long db = b.degree();
    const Integer& lb = b.leading();
    long dr = static_cast<long>(r.size()) - 1;
    while (dr >= db) {
        Integer lr = r[static_cast<std::size_t>(dr)];
        const std::size_t shift = static_cast<std::size_t>(dr - db);
        if (lb != 1)
            for (long i = 0; i <= dr; ++i) r[static_cast<std::size_t>(i)] *= lb;
        for (long j = 0; j <= db; ++j)
            mpz_submul(r[shift + static_cast<std::size_t>(j)].get_mpz_t(), lr.get_mpz_t(),
                       bc[static_cast<std::size_t>(j)].get_mpz_t());
        while (dr >= 0 && sgn(r[static_cast<std::size_t>(dr)]) == 0) --dr;
        r.resize(static_cast<std::size_t>(dr + 1));
    }
    return Poly(std::move(r));
}

namespace detail {

constexpr std::uint64_t kGcdPrimes[] = {2147483647ULL, 2147483629ULL, 2147483587ULL,
                                        2147483579ULL, 2147483563ULL};

inline std::vector<std::uint64_t> reduce_mod(const Poly& a, std::uint64_t p) {
    std::vector<std::uint64_t> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mpz_fdiv_ui(a.coeffs()[i].get_mpz_t(), p);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

/// Degree of gcd(a, b) over F_p, or -1 when both vanish.
inline long gcd_degree_mod(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b,
                           std::uint64_t p) {
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        const std::uint64_t inv = powmod(b.back(), p - 2, p);
        while (a.size() >= b.size()) {
            const std::uint64_t f = mulmod(a.back(), inv, p);
            const std::size_t shift = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j)
                a[shift + j] = (a[shift + j] + p - mulmod(f, b[j], p)) % p;
            while (!a.empty() && a.back() == 0) a.pop_back();
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return static_cast<long>(a.size()) - 1;
}

}  // namespace detail

/**
 * Greatest common divisor in Z[q] by the primitive polynomial remainder
 * sequence: every pseudo-remainder is reduced to its primitive part before
 * the next step, which keeps coefficient growth in check.
 *
 * The result is primitive with positive leading coefficient; gcd(0, 0) = 0.
 * A modular image is tried first, and a constant gcd mod p proves the
 * integer gcd is 1.
 */
inline Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) return {};
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    if (a.is_constant() || b.is_constant()) return Poly{1};

    for (std::uint64_t p : detail::kGcdPrimes) {
        if (mpz_fdiv_ui(a.leading().get_mpz_t(), p) == 0) continue;
        if (detail::gcd_degree_mod(detail::reduce_mod(a, p), detail::reduce_mod(b, p), p) == 0)
            return Poly{1};
        break;
    }

    Poly x = a.primitive_part();
    Poly y = b.primitive_part();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        Poly r = pseudo_remainder(x, y);
        x = std::move(y);
        y = r.primitive_part();
    }
    return x.primitive_part();
}

}  // namespace qcongruence
