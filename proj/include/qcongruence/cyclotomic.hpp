#pragma once

/**
 * @file cyclotomic.hpp
 * @brief Cyclotomic polynomials, q-integers and Phi_m-adic valuations.
 *
 * Phi_n is obtained from q^n - 1 = prod_{d | n} Phi_d by exact division;
 * no root of unity is ever represented. Results are memoized in a process
 * wide table that allows concurrent readers and serializes insertion.
 */

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "arith.hpp"
#include "poly.hpp"
#include "ratfunc.hpp"

namespace qcongruence {

namespace detail {

template <class Builder>
class MemoTable {
public:
    const Poly& get(long n) {
        {
            std::shared_lock lock(mutex_);
            if (auto it = table_.find(n); it != table_.end()) return *it->second;
        }
        // Build outside the lock; the builder may recurse into this table.
        auto value = std::make_unique<const Poly>(Builder{}(n));
        std::unique_lock lock(mutex_);
        auto [it, inserted] = table_.try_emplace(n, std::move(value));
        return *it->second;
    }

private:
    std::shared_mutex mutex_;
    std::unordered_map<long, std::unique_ptr<const Poly>> table_;
};

struct CyclotomicBuilder {
    Poly operator()(long n) const;
};

struct QIntegerBuilder {
    Poly operator()(long n) const {
        return Poly(std::vector<Integer>(static_cast<std::size_t>(n), Integer(1)));
    }
};

inline MemoTable<CyclotomicBuilder>& cyclotomic_table() {
    static MemoTable<CyclotomicBuilder> table;
    return table;
}

inline MemoTable<QIntegerBuilder>& q_integer_table() {
    static MemoTable<QIntegerBuilder> table;
    return table;
}

}  // namespace detail

/// Phi_n(q), monic with integer coefficients. Memoized.
inline const Poly& cyclotomic(long n) {
    if (n < 1) throw std::invalid_argument("cyclotomic: index must be positive, got " + std::to_string(n));
    return detail::cyclotomic_table().get(n);
}

inline Poly detail::CyclotomicBuilder::operator()(long n) const {
    Poly p = Poly::binomial(static_cast<std::size_t>(n));
    for (long d : divisors(n)) {
        if (d == n) break;
        auto q = divide_exact(p, cyclotomic(d));
        if (!q) throw std::logic_error("cyclotomic: inexact division");
        p = std::move(*q);
    }
    return p;
}

/// [n] = 1 + q + ... + q^{n-1}; [0] = 0. Memoized.
inline const Poly& q_integer(long n) {
    if (n < 0) throw std::invalid_argument("q_integer: n must be non-negative");
    return detail::q_integer_table().get(n);
}

/**
 * Outcome of a valuation: a signed integer, or "infinite" for the zero
 * function. Infinite meets every requirement.
 */
class Valuation {
public:
    static Valuation finite(long v) { return Valuation(v, false); }
    static Valuation infinite() { return Valuation(0, true); }

    bool is_infinite() const { return infinite_; }

    long value() const {
        if (infinite_) throw std::logic_error("Valuation: value of infinite valuation");
        return v_;
    }

    bool meets(long required) const { return infinite_ || v_ >= required; }

    std::string to_string() const { return infinite_ ? "inf" : std::to_string(v_); }

    friend bool operator==(const Valuation&, const Valuation&) = default;

private:
    Valuation(long v, bool inf) : v_(v), infinite_(inf) {}
    long v_;
    bool infinite_;
};

namespace detail {

/// A prime p = 1 (mod m) below 2^31 together with a primitive m-th root of
/// unity modulo p.
struct RootOfUnityModP {
    std::uint64_t p;
    std::uint64_t omega;
};

inline RootOfUnityModP make_root_of_unity(long m) {
    const auto ps = prime_factors(m);
    const std::uint64_t um = static_cast<std::uint64_t>(m);
    for (std::uint64_t t = (2147483647ULL - 1) / um; t > 0; --t) {
        const std::uint64_t p = um * t + 1;
        if (!is_prime(static_cast<long>(p))) continue;
        for (std::uint64_t x = 2; x < p; ++x) {
            const std::uint64_t w = powmod(x, (p - 1) / um, p);
            bool primitive = w != 0;
            for (long l : ps)
                if (powmod(w, um / static_cast<std::uint64_t>(l), p) == 1) primitive = false;
            if (primitive && (m > 1 || w == 1)) return {p, w};
        }
    }
    throw std::logic_error("make_root_of_unity: no prime found");
}

inline const RootOfUnityModP& root_of_unity(long m) {
    static std::shared_mutex mutex;
    static std::map<long, RootOfUnityModP> table;
    {
        std::shared_lock lock(mutex);
        if (auto it = table.find(m); it != table.end()) return it->second;
    }
    RootOfUnityModP r = make_root_of_unity(m);
    std::unique_lock lock(mutex);
    return table.try_emplace(m, r).first->second;
}

/// False proves Phi_m does not divide f. True means "maybe".
inline bool may_divide_by_cyclotomic(const Poly& f, long m) {
    const auto& r = root_of_unity(m);
    return f.evaluate_mod(r.omega, r.p) == 0;
}

}  // namespace detail

/// Removes as many factors Phi_m from f as possible (at most `limit`) and
/// returns how many were removed. f must be non-zero.
inline long strip_cyclotomic(Poly& f, long m, long limit = -1) {
    const Poly& phi = cyclotomic(m);
    long v = 0;
    while (limit < 0 || v < limit) {
        if (f.degree() < phi.degree()) break;
        if (!detail::may_divide_by_cyclotomic(f, m)) break;
        auto q = divide_exact(f, phi);
        if (!q) break;
        f = std::move(*q);
        ++v;
    }
    return v;
}

/// Multiplicity of Phi_m in a non-zero polynomial.
inline long phi_valuation(const Poly& f, long m) {
    if (f.is_zero()) throw std::domain_error("phi_valuation: zero polynomial");
    Poly g = f;
    return strip_cyclotomic(g, m);
}

/// v such that Phi_m^v exactly divides f; infinite for f = 0.
inline Valuation phi_valuation(const RatFunc& f, long m) {
    if (m < 1) throw std::invalid_argument("phi_valuation: index must be positive");
    if (f.is_zero()) return Valuation::infinite();
    return Valuation::finite(phi_valuation(f.num(), m) - phi_valuation(f.den(), m));
}

/// Standard p-adic valuation of a rational; infinite for zero.
inline Valuation rational_p_valuation(const Rational& x, unsigned long p) {
    if (p < 2 || !is_prime(static_cast<long>(p)))
        throw std::invalid_argument("rational_p_valuation: p must be prime");
    if (sgn(x) == 0) return Valuation::infinite();
    auto count = [p](Integer v) {
        long c = 0;
        while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
            mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
            ++c;
        }
        return c;
    };
    return Valuation::finite(count(x.get_num()) - count(x.get_den()));
}

}  // namespace qcongruence
