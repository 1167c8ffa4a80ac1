#pragma once

/**
 * @file hypergeom.hpp
 * @brief Exact evaluation of the truncated sums
 *
 *     sum_{k=0}^{M} [2dk+r] (q^r;q^d)_k^d / (q^d;q^d)_k^d * q^{d(d-r-2)k/2}
 *
 * and of the terminating basic hypergeometric identities behind their
 * supercongruences: Andrews' multiseries extension of Watson's 8phi7
 * transformation, Watson's transformation itself, Gasper's very-well-poised
 * Karlsson-Minton summation and the vanishing multisum derived from them.
 *
 * Every parameter is an integer power of q, and every series is taken in a
 * base q^B with B >= 1 (the theorem sums live in base q^d). The
 * very-well-poised pair (q sqrt(a), -q sqrt(a); p)_k / (sqrt(a), -sqrt(a); p)_k
 * is used in its collapsed form (1 - a p^{2k}) / (1 - a), so square roots of
 * parameters never appear, except in the generic rphis evaluator used for
 * Watson's formula, which works in t = q^{1/2}.
 */

#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cyclo_product.hpp"
#include "qobjects.hpp"
#include "ratfunc.hpp"

namespace qcongruence {

enum class Variant { Thm1, Thm2 };
enum class Truncation { Upper, Full };

inline const char* to_string(Variant v) { return v == Variant::Thm1 ? "thm1" : "thm2"; }
inline const char* to_string(Truncation t) { return t == Truncation::Upper ? "upper" : "full"; }

/// A parameter tuple for the two theorem families. Build through validate_case().
struct TheoremCase {
    long d = 5;
    long r = 1;
    long n = 2;
    Variant variant = Variant::Thm1;
    Truncation truncation = Truncation::Upper;

    /// (dn - n - r)/d for the first family, (dn - 2n - r)/d for the second.
    long upper_bound() const {
        const long mult = variant == Variant::Thm1 ? 1 : 2;
        return (d * n - mult * n - r) / d;
    }

    /// The truncation point M actually summed to.
    long bound() const { return truncation == Truncation::Upper ? upper_bound() : n - 1; }

    std::string describe() const {
        return std::string(to_string(variant)) + "(d=" + std::to_string(d) + ", r=" + std::to_string(r) +
               ", n=" + std::to_string(n) + ", " + to_string(truncation) + ")";
    }

    friend bool operator==(const TheoremCase&, const TheoremCase&) = default;
};

// ---------------------------------------------------------------------------
// The summand family
// ---------------------------------------------------------------------------

/// Exponent d(d-r-2)/2 of q per unit of k; throws when it is not an integer.
inline long family_q_step(long d, long r) {
    const long twice = d * (d - r - 2);
    if (twice % 2 != 0)
        throw std::invalid_argument("d(d-r-2)/2 is not an integer for d=" + std::to_string(d) +
                                    ", r=" + std::to_string(r));
    return twice / 2;
}

/// k-th summand [2dk+r] (q^r;q^d)_k^d / (q^d;q^d)_k^d q^{d(d-r-2)k/2}, factored.
inline CycloProduct family_term(long d, long r, long k) {
    CycloProduct t = CycloProduct::q_integer(2 * d * k + r);
    t *= (qpoch(r, d, k) / qpoch(d, d, k)).pow(d);
    t *= CycloProduct::q_power(family_q_step(d, r) * k);
    return t;
}

struct SumValue {
    RatFunc value;
    std::size_t term_count = 0;
};

/// Exact sum of family_term(d, r, k) for k = 0..M.
inline SumValue truncated_sum(long d, long r, long M) {
    if (d < 1) throw std::invalid_argument("truncated_sum: d must be positive");
    if (M < 0) throw std::invalid_argument("truncated_sum: M must be non-negative");
    CycloSum sum;
    for (long k = 0; k <= M; ++k) sum.add(family_term(d, r, k));
    return {sum.value(), sum.term_count()};
}

inline RatFunc theorem_term(const TheoremCase& c, long k) {
    if (k < 0 || k > c.bound())
        throw std::out_of_range("theorem_term: k=" + std::to_string(k) + " outside 0.." +
                                std::to_string(c.bound()));
    return family_term(c.d, c.r, k).to_ratfunc();
}

inline RatFunc theorem_sum(const TheoremCase& c) { return truncated_sum(c.d, c.r, c.bound()).value; }

// ---------------------------------------------------------------------------
// Compositions
// ---------------------------------------------------------------------------

/// Calls fn(j) for every (j_1, ..., j_parts) of non-negative integers with
/// j_1 + ... + j_parts <= max_total, in lexicographic order.
inline void for_each_composition(std::size_t parts, long max_total,
                                 const std::function<void(std::span<const long>)>& fn) {
    std::vector<long> j(parts, 0);
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
        if (i == parts) {
            fn(j);
            return;
        }
        for (long v = 0; v <= left; ++v) {
            j[i] = v;
            rec(i + 1, left - v);
        }
        j[i] = 0;
    };
    if (max_total >= 0) rec(0, max_total);
}

namespace detail {

/// (1 - a p^{2k}) / (1 - a) for a = q^a_exp, p = q^base.
inline CycloProduct well_poised_factor(long a_exp, long base, long k) {
    CycloProduct den = CycloProduct::one_minus_q_power(a_exp);
    if (den.is_zero()) throw VanishingDenominator("(sqrt(a), -sqrt(a); p)_k with a = 1");
    return CycloProduct::one_minus_q_power(a_exp + 2 * base * k) / den;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Andrews' multiseries transformation
// ---------------------------------------------------------------------------

/// Parameters a = q^a, b_i = q^{pairs[i].first}, c_i = q^{pairs[i].second},
/// termination order N, all in base p = q^base.
struct AndrewsParams {
    long base = 1;
    long a = 0;
    std::vector<std::pair<long, long>> pairs;
    long N = 0;

    std::size_t m() const { return pairs.size(); }

    void validate() const {
        if (base < 1) throw std::invalid_argument("AndrewsParams: base must be >= 1");
        if (pairs.size() < 2) throw std::invalid_argument("AndrewsParams: need m >= 2 pairs");
        if (N < 0) throw std::invalid_argument("AndrewsParams: N must be non-negative");
    }
};

/// Terms of the very-well-poised left-hand side (k = 0..N).
inline CycloSum andrews_lhs_terms(const AndrewsParams& p, const CycloProduct& scale = {}) {
    p.validate();
    const long B = p.base;
    const long m = static_cast<long>(p.m());
    long z = m * p.a + B * (m + p.N);
    for (auto [b, c] : p.pairs) z -= b + c;

    CycloSum sum;
    for (long k = 0; k <= p.N; ++k) {
        CycloProduct t = scale * qpoch(p.a, B, k) * detail::well_poised_factor(p.a, B, k);
        for (auto [b, c] : p.pairs) {
            t *= qpoch(b, B, k) * qpoch(c, B, k);
            t *= qpoch_inverse(p.a + B - b, B, k, "(aq/b_i)_k") * qpoch_inverse(p.a + B - c, B, k, "(aq/c_i)_k");
        }
        t *= qpoch(-p.N * B, B, k);
        t *= qpoch_inverse(B, B, k) * qpoch_inverse(p.a + (p.N + 1) * B, B, k, "(aq^{N+1})_k");
        t *= CycloProduct::q_power(z * k);
        sum.add(std::move(t));
    }
    return sum;
}

/// (aq, aq/(b_m c_m))_N / (aq/b_m, aq/c_m)_N
inline CycloProduct andrews_prefactor(const AndrewsParams& p) {
    p.validate();
    const long B = p.base;
    const auto [bm, cm] = p.pairs.back();
    return qpoch(p.a + B, B, p.N) * qpoch(p.a + B - bm - cm, B, p.N) *
           qpoch_inverse(p.a + B - bm, B, p.N, "(aq/b_m)_N") * qpoch_inverse(p.a + B - cm, B, p.N, "(aq/c_m)_N");
}

/// Terms of the (m-1)-fold sum on the right-hand side, each multiplied by scale.
/// Compositions with j_1 + ... + j_{m-1} > N are killed by (q^{-N})_{...} and skipped.
inline CycloSum andrews_multisum_terms(const AndrewsParams& p, const CycloProduct& scale = {}) {
    p.validate();
    const long B = p.base;
    const std::size_t m = p.m();
    const auto [bm, cm] = p.pairs.back();

    CycloSum sum;
    for_each_composition(m - 1, p.N, [&](std::span<const long> j) {
        CycloProduct t = scale;
        long partial = 0, qexp = 0;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            const auto [bi, ci] = p.pairs[i];
            const auto [bn, cn] = p.pairs[i + 1];
            partial += j[i];
            t *= qpoch(p.a + B - bi - ci, B, j[i]) * qpoch_inverse(B, B, j[i]);
            t *= qpoch(bn, B, partial) * qpoch(cn, B, partial);
            t *= qpoch_inverse(p.a + B - bi, B, partial, "(aq/b_i)_S") *
                 qpoch_inverse(p.a + B - ci, B, partial, "(aq/c_i)_S");
            if (i + 2 < m) qexp += (p.a + B - bn - cn) * partial;
        }
        t *= qpoch(-p.N * B, B, partial);
        t *= qpoch_inverse(bm + cm - p.N * B - p.a, B, partial, "(b_m c_m q^{-N}/a)_S");
        t *= CycloProduct::q_power(qexp + B * partial);
        sum.add(std::move(t));
    });
    return sum;
}

inline RatFunc andrews_lhs(const AndrewsParams& p) { return andrews_lhs_terms(p).value(); }

inline RatFunc andrews_rhs(const AndrewsParams& p) {
    return andrews_multisum_terms(p, andrews_prefactor(p)).value();
}

// ---------------------------------------------------------------------------
// Generic terminating rphis and Watson's transformation
// ---------------------------------------------------------------------------

/// sign * t^exponent
struct SignedPower {
    int sign = 1;
    long exponent = 0;
};

/**
 * Terminating basic hypergeometric series
 *
 *   sum_{k=0}^{terms} (u_1..u_r; p)_k / (p, l_1..l_s; p)_k
 *                     [(-1)^k p^{k(k-1)/2}]^{1+s-r} z^k
 *
 * in the variable t with p = t^base.
 */
struct PhiSeries {
    std::vector<SignedPower> upper;
    std::vector<SignedPower> lower;
    long base = 1;
    SignedPower argument;
    long terms = 0;
};

namespace detail {

/// (sign * t^e; t^base)_k
inline CycloProduct signed_poch(SignedPower x, long base, long k) {
    CycloProduct p;
    for (long i = 0; i < k && !p.is_zero(); ++i) {
        const long e = x.exponent + i * base;
        p *= x.sign > 0 ? CycloProduct::one_minus_q_power(e) : CycloProduct::one_plus_q_power(e);
    }
    return p;
}

}  // namespace detail

inline CycloSum phi_series_terms(const PhiSeries& s, const CycloProduct& scale = {}) {
    if (s.base < 1) throw std::invalid_argument("PhiSeries: base must be >= 1");
    const long balance = 1 + static_cast<long>(s.lower.size()) - static_cast<long>(s.upper.size());
    CycloSum sum;
    for (long k = 0; k <= s.terms; ++k) {
        CycloProduct t = scale;
        for (const auto& u : s.upper) t *= detail::signed_poch(u, s.base, k);
        CycloProduct den = qpoch(s.base, s.base, k);
        for (const auto& l : s.lower) den *= detail::signed_poch(l, s.base, k);
        if (den.is_zero()) throw VanishingDenominator("lower parameter of phi series at k=" + std::to_string(k));
        t /= den;
        if (balance != 0) {
            const long sign = (k % 2 == 1 && balance % 2 != 0) ? -1 : 1;
            t *= CycloProduct::constant(sign) * CycloProduct::q_power(balance * s.base * k * (k - 1) / 2);
        }
        if (s.argument.sign < 0 && k % 2 == 1) t = -t;
        t *= CycloProduct::q_power(s.argument.exponent * k);
        sum.add(std::move(t));
    }
    return sum;
}

struct WatsonPair {
    RatFunc lhs;
    RatFunc rhs;
};

/**
 * Both sides of Watson's 8phi7 -> 4phi3 transformation with parameters
 * a = q^a, b = q^b, c = q^c, d = q^d, e = q^e and termination q^{-N}.
 *
 * The 8phi7 carries q sqrt(a) and -sqrt(a), so both sides are returned as
 * functions of t = q^{1/2}: every q-exponent is doubled.
 */
inline WatsonPair watson_pair(long a, long b, long c, long d, long e, long N) {
    if (N < 0) throw std::invalid_argument("watson_pair: N must be non-negative");
    PhiSeries lhs;
    lhs.base = 2;
    lhs.terms = N;
    lhs.upper = {{1, 2 * a}, {1, a + 2}, {-1, a + 2}, {1, 2 * b}, {1, 2 * c}, {1, 2 * d}, {1, 2 * e}, {1, -2 * N}};
    lhs.lower = {{1, a},
                 {-1, a},
                 {1, 2 * (a + 1 - b)},
                 {1, 2 * (a + 1 - c)},
                 {1, 2 * (a + 1 - d)},
                 {1, 2 * (a + 1 - e)},
                 {1, 2 * (a + N + 1)}};
    lhs.argument = {1, 2 * (2 * a + N + 2 - b - c - d - e)};

    PhiSeries rhs;
    rhs.base = 2;
    rhs.terms = N;
    rhs.upper = {{1, 2 * (a + 1 - b - c)}, {1, 2 * d}, {1, 2 * e}, {1, -2 * N}};
    rhs.lower = {{1, 2 * (a + 1 - b)}, {1, 2 * (a + 1 - c)}, {1, 2 * (d + e - N - a)}};
    rhs.argument = {1, 2};

    CycloProduct pre = qpoch(2 * (a + 1), 2, N) * qpoch(2 * (a + 1 - d - e), 2, N) *
                       qpoch_inverse(2 * (a + 1 - d), 2, N, "(aq/d)_N") *
                       qpoch_inverse(2 * (a + 1 - e), 2, N, "(aq/e)_N");
    return {phi_series_terms(lhs).value(), phi_series_terms(rhs, pre).value()};
}

// ---------------------------------------------------------------------------
// Karlsson-Minton type summations
// ---------------------------------------------------------------------------

/**
 * a = q^a, e_j = q^{e[j]}, non-negative integers n_j = nondeg[j] and the
 * termination order N, in base p = q^base. For the full (non-zero) form,
 * b = q^b and the terminating choice dd = p^{-s} (dd_exp = -s * base).
 */
struct KarlssonMintonParams {
    long base = 1;
    long a = 0;
    std::vector<long> e;
    std::vector<long> nondeg;
    long N = 1;
    std::optional<long> b;
    std::optional<long> dd;

    long nu() const { return std::accumulate(nondeg.begin(), nondeg.end(), 0L); }

    void validate_shape() const {
        if (base < 1) throw std::invalid_argument("KarlssonMintonParams: base must be >= 1");
        if (e.empty() || e.size() != nondeg.size())
            throw std::invalid_argument("KarlssonMintonParams: e and nondeg must have equal, non-zero length");
        for (long x : nondeg)
            if (x < 0) throw std::invalid_argument("KarlssonMintonParams: n_j must be non-negative");
    }
};

namespace detail {

/// prod_j (e_j, a p^{n_j+1}/e_j)_k / (ap/e_j, e_j p^{-n_j})_k
inline CycloProduct km_pairs(const KarlssonMintonParams& p, long k) {
    const long B = p.base;
    CycloProduct t;
    for (std::size_t j = 0; j < p.e.size(); ++j) {
        const long ej = p.e[j], nj = p.nondeg[j];
        t *= qpoch(ej, B, k) * qpoch(p.a + (nj + 1) * B - ej, B, k);
        t *= qpoch_inverse(p.a + B - ej, B, k, "(aq/e_j)_k") * qpoch_inverse(ej - nj * B, B, k, "(e_j q^{-n_j})_k");
    }
    return t;
}

}  // namespace detail

/// Left-hand side of the terminating very-well-poised Karlsson-Minton
/// summation; it vanishes identically when N > nu.
inline RatFunc gasper_terminating_sum(const KarlssonMintonParams& p) {
    p.validate_shape();
    if (p.N <= p.nu())
        throw std::invalid_argument("gasper_terminating_sum: requires N > nu (N=" + std::to_string(p.N) +
                                    ", nu=" + std::to_string(p.nu()) + ")");
    const long B = p.base;
    CycloSum sum;
    for (long k = 0; k <= p.N; ++k) {
        CycloProduct t = qpoch(p.a, B, k) * detail::well_poised_factor(p.a, B, k) * detail::km_pairs(p, k);
        t *= qpoch(-p.N * B, B, k);
        t *= qpoch_inverse(B, B, k) * qpoch_inverse(p.a + (p.N + 1) * B, B, k, "(aq^{N+1})_k");
        t *= CycloProduct::q_power((p.N - p.nu()) * B * k);
        sum.add(std::move(t));
    }
    return sum.value();
}

struct GasperPair {
    RatFunc lhs;
    RatFunc rhs;
};

/**
 * Gasper's very-well-poised Karlsson-Minton summation with free b and the
 * terminating choice dd = p^{-s}. The infinite products on the right then
 * collapse to (p, ap; p)_s / (ap/b, bp; p)_s. Requires s >= nu, where the
 * series is inside its region of validity.
 */
inline GasperPair gasper_sum(const KarlssonMintonParams& p) {
    p.validate_shape();
    if (!p.b || !p.dd) throw std::invalid_argument("gasper_sum: b and dd are required");
    const long B = p.base;
    if (*p.dd > 0 || *p.dd % B != 0)
        throw std::invalid_argument("gasper_sum: dd must be p^{-s} with s >= 0");
    const long s = -*p.dd / B;
    if (s < p.nu()) throw std::invalid_argument("gasper_sum: requires s >= nu");
    const long b = *p.b, dd = *p.dd;

    CycloSum lhs;
    for (long k = 0; k <= s; ++k) {
        CycloProduct t = qpoch(p.a, B, k) * detail::well_poised_factor(p.a, B, k);
        t *= qpoch(b, B, k) * qpoch(p.a - b, B, k) * qpoch(dd, B, k);
        t *= qpoch_inverse(B, B, k) * qpoch_inverse(p.a + B - b, B, k, "(aq/b)_k") *
             qpoch_inverse(b + B, B, k, "(bq)_k") * qpoch_inverse(p.a + B - dd, B, k, "(aq/d)_k");
        t *= detail::km_pairs(p, k);
        t *= CycloProduct::q_power((B * (1 - p.nu()) - dd) * k);
        lhs.add(std::move(t));
    }

    CycloProduct rhs = qpoch(B, B, s) * qpoch(p.a + B, B, s) * qpoch_inverse(p.a + B - b, B, s, "(aq/b)_s") *
                       qpoch_inverse(b + B, B, s, "(bq)_s");
    for (std::size_t j = 0; j < p.e.size(); ++j) {
        const long ej = p.e[j], nj = p.nondeg[j];
        rhs *= qpoch(p.a + B - b - ej, B, nj) * qpoch(b + B - ej, B, nj);
        rhs *= qpoch_inverse(p.a + B - ej, B, nj, "(aq/e_j)_{n_j}") * qpoch_inverse(B - ej, B, nj, "(q/e_j)_{n_j}");
    }
    return {lhs.value(), rhs.to_ratfunc()};
}

/**
 * The (m-1)-fold multisum that vanishes for N > n_1 + ... + n_m
 * (m = e.size() >= 2, with e_{m+1} = e_1). Compositions beyond N are killed
 * by (q^{-N})_{j_1+...+j_{m-1}} and skipped.
 */
inline CycloSum multi_km_terms(const KarlssonMintonParams& p) {
    p.validate_shape();
    const std::size_t m = p.e.size();
    if (m < 2) throw std::invalid_argument("multi_km_sum: requires m >= 2");
    if (p.N <= p.nu())
        throw std::invalid_argument("multi_km_sum: requires N > nu (N=" + std::to_string(p.N) +
                                    ", nu=" + std::to_string(p.nu()) + ")");
    const long B = p.base;
    auto e = [&](std::size_t i) { return p.e[(i - 1) % m]; };  // 1-based, cyclic
    auto n = [&](std::size_t i) { return p.nondeg[i - 1]; };

    CycloSum sum;
    for_each_composition(m - 1, p.N, [&](std::span<const long> j) {
        CycloProduct t;
        long partial = 0, qexp = 0;
        for (std::size_t i = 1; i <= m - 1; ++i) {
            const long ji = j[i - 1];
            partial += ji;
            t *= qpoch(e(i) - n(i) * B - e(i + 1), B, ji) * qpoch_inverse(B, B, ji);
            t *= qpoch(p.a + (n(i + 1) + 1) * B - e(i + 1), B, partial) * qpoch(e(i + 2), B, partial);
            t *= qpoch_inverse(e(i) - n(i) * B, B, partial, "(e_i q^{-n_i})_S") *
                 qpoch_inverse(p.a + B - e(i + 1), B, partial, "(aq/e_{i+1})_S");
            if (i <= m - 2) qexp += (p.a + B - (p.a + (n(i + 1) + 1) * B + e(i + 2) - e(i + 1))) * partial;
        }
        t *= qpoch(-p.N * B, B, partial);
        t *= qpoch_inverse(e(1) + (n(m) - p.N + 1) * B - e(m), B, partial, "(e_1 q^{n_m-N+1}/e_m)_S");
        t *= CycloProduct::q_power(qexp + B * partial);
        sum.add(std::move(t));
    });
    return sum;
}

inline RatFunc multi_km_sum(const KarlssonMintonParams& p) { return multi_km_terms(p).value(); }

// ---------------------------------------------------------------------------
// Specializations used by the theorem proofs
// ---------------------------------------------------------------------------

/// Andrews parameters under which [r] * andrews_lhs equals the theorem sum
/// truncated at upper_bound(). Base q^d, a = q^r, m = (d+1)/2.
inline AndrewsParams theorem_andrews_params(const TheoremCase& c) {
    const long d = c.d, r = c.r, n = c.n;
    const std::size_t m = static_cast<std::size_t>((d + 1) / 2);
    AndrewsParams p;
    p.base = d;
    p.a = r;
    p.N = c.upper_bound();
    if (c.variant == Variant::Thm1) {
        p.pairs.assign(m - 1, {r, r});
        p.pairs.emplace_back((d + r) / 2, d + (d - 1) * n);
    } else {
        p.pairs.emplace_back((d + r) / 2, r);
        for (std::size_t i = 1; i + 1 < m; ++i) p.pairs.emplace_back(r, r);
        p.pairs.emplace_back(r, d + (d - 2) * n);
    }
    return p;
}

/// Parameters of the vanishing multisum that the first family reduces to
/// modulo Phi_n^2 (first family only; requires the theorem hypotheses).
inline KarlssonMintonParams theorem1_multi_km_params(long d, long r, long n) {
    const long m = (d + 1) / 2;
    KarlssonMintonParams p;
    p.base = d;
    p.a = r;
    p.N = (d * n - n - r) / d;
    p.e.resize(static_cast<std::size_t>(m));
    p.nondeg.resize(static_cast<std::size_t>(m));
    p.e[0] = (d + r) / 2;
    p.nondeg[0] = (d * n - d + n + r) / (2 * d);
    for (long i = 2; i <= m - 1; ++i) {
        p.e[static_cast<std::size_t>(i - 1)] = r - (m + i - 2) * n;
        p.nondeg[static_cast<std::size_t>(i - 1)] = (n + r - d) / d;
    }
    p.e[static_cast<std::size_t>(m - 1)] = r - (2 * m - 2) * n;
    p.nondeg[static_cast<std::size_t>(m - 1)] = 0;
    return p;
}

struct ProofDecomposition {
    RatFunc prefactor;
    RatFunc multisum;
    std::size_t term_count = 0;
};

/// Splits the upper-truncated theorem sum into [r] times the Andrews
/// prefactor, and the (m-1)-fold multisum.
inline ProofDecomposition proof_decomposition(const TheoremCase& c) {
    if (c.truncation != Truncation::Upper)
        throw std::invalid_argument("proof_decomposition: requires the upper truncation");
    const AndrewsParams p = theorem_andrews_params(c);
    CycloProduct pre = CycloProduct::q_integer(c.r) * andrews_prefactor(p);
    CycloSum ms = andrews_multisum_terms(p);
    return {pre.to_ratfunc(), ms.value(), ms.term_count()};
}

}  // namespace qcongruence
