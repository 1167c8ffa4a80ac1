#pragma once

/**
 * @file qobjects.hpp
 * @brief q-shifted factorials (q^e; q^d)_k, their products, and classical
 *        rising factorials.
 */

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cyclo_product.hpp"
#include "ratfunc.hpp"

namespace qcongruence {

/// (q^base_exponent; q^step)_length
struct QPochSpec {
    long base_exponent = 0;
    long step = 1;
    long length = 0;

    std::string to_string() const {
        return "(q^" + std::to_string(base_exponent) + ";q^" + std::to_string(step) + ")_" +
               std::to_string(length);
    }
};

/// A q-shifted factorial that vanishes identically sits in a denominator.
class VanishingDenominator : public std::domain_error {
public:
    explicit VanishingDenominator(const std::string& what_factor)
        : std::domain_error("vanishing denominator: " + what_factor), factor_(what_factor) {}

    const std::string& factor() const { return factor_; }

private:
    std::string factor_;
};

namespace detail {

inline void check_spec(const QPochSpec& s) {
    if (s.step < 1) throw std::invalid_argument("QPochSpec: step must be >= 1");
    if (s.length < 0) throw std::invalid_argument("QPochSpec: length must be >= 0");
}

}  // namespace detail

/// prod_{i<k} (1 - q^{e + i d}) in factored form (zero when some e + i d = 0).
inline CycloProduct q_poch_factor(const QPochSpec& s) {
    detail::check_spec(s);
    CycloProduct p;
    for (long i = 0; i < s.length; ++i) {
        p *= CycloProduct::one_minus_q_power(s.base_exponent + i * s.step);
        if (p.is_zero()) break;
    }
    return p;
}

/// Shorthand for (q^e; q^d)_k in factored form.
inline CycloProduct qpoch(long e, long d, long k) { return q_poch_factor({e, d, k}); }

/// 1 / (q^e; q^d)_k, throwing VanishingDenominator named after `label`.
inline CycloProduct qpoch_inverse(long e, long d, long k, const std::string& label = {}) {
    CycloProduct p = qpoch(e, d, k);
    if (p.is_zero())
        throw VanishingDenominator(label.empty() ? QPochSpec{e, d, k}.to_string()
                                                 : label + " = " + QPochSpec{e, d, k}.to_string());
    return CycloProduct() / p;
}

inline RatFunc q_pochhammer(const QPochSpec& spec) { return q_poch_factor(spec).to_ratfunc(); }

/// prod of q_pochhammer(spec)^power, powers possibly negative.
inline CycloProduct q_poch_product_factor(std::span<const std::pair<QPochSpec, long>> specs) {
    CycloProduct acc;
    for (const auto& [spec, power] : specs) {
        CycloProduct f = q_poch_factor(spec);
        if (f.is_zero() && power < 0) throw VanishingDenominator(spec.to_string());
        acc *= f.pow(power);
    }
    return acc;
}

inline RatFunc q_poch_product(std::span<const std::pair<QPochSpec, long>> specs) {
    return q_poch_product_factor(specs).to_ratfunc();
}

inline RatFunc q_poch_product(std::initializer_list<std::pair<QPochSpec, long>> specs) {
    return q_poch_product(std::span<const std::pair<QPochSpec, long>>(specs.begin(), specs.size()));
}

/// (a)_k = a (a+1) ... (a+k-1)
inline Rational rising_factorial(const Rational& a, long k) {
    if (k < 0) throw std::invalid_argument("rising_factorial: k must be non-negative");
    Rational r = 1;
    for (long i = 0; i < k; ++i) r *= a + i;
    return r;
}

}  // namespace qcongruence
