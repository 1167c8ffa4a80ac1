#pragma once

/**
 * @file congruence.hpp
 * @brief Certification of congruences modulo products of cyclotomic powers.
 *
 * A congruence f = 0 (mod prod Phi_m^{k_m}) for a rational function f is
 * checked as a valuation profile: the reduced denominator of f must be prime
 * to every required Phi_m, and the valuation of f at Phi_m must reach k_m.
 * [n] Phi_n^k expands to k+1 at index n and 1 at every other divisor m > 1
 * of n, because [n] = prod_{m | n, m > 1} Phi_m.
 */

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "cyclotomic.hpp"
#include "hypergeom.hpp"
#include "qobjects.hpp"
#include "ratfunc.hpp"

namespace qcongruence {

/// Required minimum valuation per cyclotomic index.
struct Modulus {
    std::map<long, long> parts;

    /// Phi_n^k
    static Modulus phi_power(long n, long k) {
        Modulus m;
        if (k > 0) m.parts[n] = k;
        return m;
    }

    /// [n]
    static Modulus q_integer(long n) {
        Modulus m;
        for (long x : divisors(n))
            if (x > 1) m.parts[x] = 1;
        return m;
    }

    /// [n] Phi_n^k
    static Modulus q_integer_times_phi(long n, long k) {
        Modulus m = q_integer(n);
        if (n > 1) m.parts[n] += k;
        else if (k > 0) m.parts[1] = k;
        return m;
    }

    std::string describe() const {
        std::string s;
        for (auto [m, k] : parts) {
            if (!s.empty()) s += "*";
            s += "Phi_" + std::to_string(m) + (k != 1 ? "^" + std::to_string(k) : "");
        }
        return s.empty() ? "1" : s;
    }

    friend bool operator==(const Modulus&, const Modulus&) = default;
};

struct ValuationReport {
    std::map<long, Valuation> achieved;
    std::map<long, long> required;
    bool pass = false;
};

enum class Status { Pass, Fail, Error };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::Error: return "ERROR";
    }
    return "?";
}

struct CheckReport {
    std::string description;
    Modulus modulus;
    ValuationReport valuation;
    Status status = Status::Error;
    double elapsed_ms = 0;
    std::size_t term_count = 0;
    std::string error;
    std::optional<TheoremCase> theorem_case;

    bool passed() const { return status == Status::Pass; }
};

/// Hypotheses of one of the theorem families that a parameter tuple breaks.
class HypothesisError : public std::invalid_argument {
public:
    explicit HypothesisError(std::vector<std::string> violations)
        : std::invalid_argument(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "hypotheses violated:";
        for (const auto& x : v) s += " [" + x + "]";
        return s;
    }
    std::vector<std::string> violations_;
};

namespace detail {

class Stopwatch {
public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline bool is_odd(long x) { return x % 2 != 0; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Case validation
// ---------------------------------------------------------------------------

struct CaseValidation {
    std::optional<TheoremCase> value;
    std::vector<std::string> violations;

    bool ok() const { return value.has_value(); }
};

inline CaseValidation validate_case(long d, long r, long n, Variant variant, Truncation truncation) {
    std::vector<std::string> v;
    if (d < 5 || !detail::is_odd(d)) v.push_back("d odd and d >= 5");
    if (!detail::is_odd(r)) v.push_back("r odd");
    if (r > d - 4) v.push_back("r <= d-4");
    if (std::gcd(d, r) != 1) v.push_back("gcd(d,r) = 1");
    if (n < 2) v.push_back("n > 1");
    if (d >= 1) {
        if (variant == Variant::Thm1) {
            if (n < d - r) v.push_back("n >= d-r");
            if (mod_floor(n + r, d) != 0) v.push_back("n = -r (mod d)");
        } else {
            if (2 * n < d - r) v.push_back("n >= (d-r)/2");
            if (mod_floor(2 * n + r, d) != 0) v.push_back("2n = -r (mod d)");
        }
    }
    CaseValidation out;
    if (v.empty()) {
        TheoremCase c{d, r, n, variant, truncation};
        if (c.upper_bound() < 0 || (d * n - (variant == Variant::Thm1 ? 1 : 2) * n - r) % d != 0)
            v.push_back("M a non-negative integer");
        else
            out.value = c;
    }
    out.violations = std::move(v);
    return out;
}

inline TheoremCase require_case(long d, long r, long n, Variant variant, Truncation truncation) {
    auto v = validate_case(d, r, n, variant, truncation);
    if (!v.ok()) throw HypothesisError(v.violations);
    return *v.value;
}

// ---------------------------------------------------------------------------
// Core check
// ---------------------------------------------------------------------------

/// Valuation-profile check of f against mod. A denominator that is not
/// invertible modulo a required Phi_m is an ERROR, distinct from FAIL.
inline CheckReport check_congruence(const RatFunc& f, const Modulus& mod, std::string description = {}) {
    detail::Stopwatch clock;
    CheckReport rep;
    rep.description = std::move(description);
    rep.modulus = mod;
    rep.valuation.required = mod.parts;
    rep.valuation.pass = true;
    for (auto [m, k] : mod.parts) {
        if (!f.is_zero() && phi_valuation(f.den(), m) != 0) {
            rep.status = Status::Error;
            rep.error = "denominator not invertible at cyclotomic " + std::to_string(m);
            rep.valuation.pass = false;
            rep.elapsed_ms = clock.elapsed_ms();
            return rep;
        }
        Valuation v = phi_valuation(f, m);
        rep.valuation.achieved.emplace(m, v);
        if (!v.meets(k)) rep.valuation.pass = false;
    }
    rep.status = rep.valuation.pass ? Status::Pass : Status::Fail;
    rep.elapsed_ms = clock.elapsed_ms();
    return rep;
}

/**
 * Independent verdict by brute force: with P = prod Phi_m^{k_m} multiplied
 * out, PASS iff gcd(den, P) = 1 and P divides num exactly; ERROR when the
 * denominator shares a factor with P. Uses no valuation code.
 */
inline Status oracle_verdict(const RatFunc& f, const Modulus& mod) {
    if (f.is_zero()) return Status::Pass;
    Poly product{1};
    for (auto [m, k] : mod.parts)
        for (long i = 0; i < k; ++i) product = product * cyclotomic(m);
    if (poly_gcd(f.den(), product).degree() > 0) return Status::Error;
    return divide_exact(f.num(), product) ? Status::Pass : Status::Fail;
}

/// f checked against mod, with the report's timing and term count filled in.
inline CheckReport check_sum(const SumValue& s, const Modulus& mod, std::string description, double build_ms) {
    CheckReport rep = check_congruence(s.value, mod, std::move(description));
    rep.term_count = s.term_count;
    rep.elapsed_ms += build_ms;
    return rep;
}

/// The truncated sum for (d, r) up to M, checked against mod. Accepts any
/// parameters with integral q-exponent (used for d = 3 regressions).
inline CheckReport check_truncated_sum(long d, long r, long M, const Modulus& mod) {
    detail::Stopwatch clock;
    SumValue s = truncated_sum(d, r, M);
    return check_sum(s, mod,
                     "sum(d=" + std::to_string(d) + ", r=" + std::to_string(r) + ", M=" + std::to_string(M) + ")",
                     clock.elapsed_ms());
}

// ---------------------------------------------------------------------------
// Theorems and conjectures
// ---------------------------------------------------------------------------

inline Modulus theorem_modulus(const TheoremCase& c) {
    return Modulus::q_integer_times_phi(c.n, c.variant == Variant::Thm1 ? 2 : 1);
}

/// Theorem sum checked against an explicit modulus.
inline CheckReport check_case(const TheoremCase& c, const Modulus& mod, const std::string& label) {
    detail::Stopwatch clock;
    SumValue s = truncated_sum(c.d, c.r, c.bound());
    CheckReport rep = check_sum(s, mod, label.empty() ? c.describe() : label + " " + c.describe(), clock.elapsed_ms());
    rep.theorem_case = c;
    return rep;
}

/// [n] Phi_n^2 for the first family, [n] Phi_n for the second.
inline CheckReport check_theorem(const TheoremCase& c) {
    return check_case(c, theorem_modulus(c), "");
}

enum class Conjecture { Conj1, Conj2, Conj3 };

inline const char* to_string(Conjecture c) {
    switch (c) {
        case Conjecture::Conj1: return "conj1";
        case Conjecture::Conj2: return "conj2";
        case Conjecture::Conj3: return "conj3";
    }
    return "?";
}

/**
 * Conjectured modulus for a case:
 *  - conj1 (r = 1) and conj2 (r = -1): Phi_n^3 on the first family
 *    (n = -r mod d), Phi_n^4 on the second (2n = -r mod d);
 *  - conj3: [n] Phi_n^3 on the second family.
 */
inline Modulus conjecture_modulus(const TheoremCase& c, Conjecture which) {
    std::vector<std::string> v;
    if (which == Conjecture::Conj1 && c.r != 1) v.push_back("conj1 requires r = 1");
    if (which == Conjecture::Conj2 && c.r != -1) v.push_back("conj2 requires r = -1");
    if (which == Conjecture::Conj3 && c.variant != Variant::Thm2) v.push_back("conj3 requires 2n = -r (mod d)");
    if (!v.empty()) throw HypothesisError(v);
    if (which == Conjecture::Conj3) return Modulus::q_integer_times_phi(c.n, 3);
    return Modulus::phi_power(c.n, c.variant == Variant::Thm1 ? 3 : 4);
}

/// Evidence gathering: reports PASS/FAIL at the conjectured modulus.
inline CheckReport check_conjecture(const TheoremCase& c, Conjecture which) {
    return check_case(c, conjecture_modulus(c, which), to_string(which));
}

/// The family (first or second) a conjecture case with given d, r, n
/// belongs to, if any.
inline std::optional<Variant> conjecture_variant(long d, long r, long n) {
    if (mod_floor(n + r, d) == 0) return Variant::Thm1;
    if (mod_floor(2 * n + r, d) == 0) return Variant::Thm2;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Lemmas
// ---------------------------------------------------------------------------

enum class Lemma3Truncation { Solved, Full };

/// Unique m in [0, n-1] with d m = -r (mod n); requires gcd(d, n) = 1.
inline long lemma3_bound(long d, long r, long n) {
    for (long m = 0; m < n; ++m)
        if (mod_floor(d * m + r, n) == 0) return m;
    throw std::logic_error("lemma3_bound: no solution");
}

/// Sum up to the solved bound (or n-1) checked modulo [n].
inline CheckReport check_lemma3(long d, long r, long n, Lemma3Truncation which) {
    std::vector<std::string> v;
    if (d < 1) v.push_back("d positive");
    if (n < 1) v.push_back("n positive");
    if (d >= 1 && n >= 1 && std::gcd(d, n) != 1) v.push_back("gcd(d,n) = 1");
    if (d >= 1 && (d * (d - r - 2)) % 2 != 0) v.push_back("d(d-r-2)/2 integral");
    if (!v.empty()) throw HypothesisError(v);
    const long M = which == Lemma3Truncation::Solved ? lemma3_bound(d, r, n) : n - 1;
    detail::Stopwatch clock;
    SumValue s = truncated_sum(d, r, M);
    return check_sum(s, Modulus::q_integer(n),
                     std::string("lemma3") + (which == Lemma3Truncation::Solved ? "-solved" : "-full") + "(d=" +
                         std::to_string(d) + ", r=" + std::to_string(r) + ", n=" + std::to_string(n) +
                         ", M=" + std::to_string(M) + ")",
                     clock.elapsed_ms());
}

/// Elements (d+r)/2, (d+r)/2 + d, ..., (d+r)/2 + dn - 2n - r - d.
inline std::vector<long> lemma4_progression(long d, long r, long n) {
    std::vector<long> out;
    const long first = (d + r) / 2;
    const long last = first + d * n - 2 * n - r - d;
    for (long x = first; x <= last; x += d) out.push_back(x);
    return out;
}

/// True iff no element of the progression is a multiple of n. Hypotheses
/// are enforced and reported by name.
inline bool check_lemma4(long d, long r, long n) {
    std::vector<std::string> v;
    if (d < 3 || !detail::is_odd(d)) v.push_back("d odd and d >= 3");
    if (!detail::is_odd(r)) v.push_back("r odd");
    if (r > d - 4) v.push_back("r <= d-4");
    if (std::gcd(d, r) != 1) v.push_back("gcd(d,r) = 1");
    if (2 * n < d - r) v.push_back("n >= (d-r)/2");
    if (d >= 1 && mod_floor(2 * n + r, d) != 0) v.push_back("2n = -r (mod d)");
    if (n < 1) v.push_back("n positive");
    if (!v.empty()) throw HypothesisError(v);
    for (long x : lemma4_progression(d, r, n))
        if (x % n == 0) return false;
    return true;
}

/// (q^{r-an}, q^{r+an}; q^d)_k - (q^r; q^d)_k^2 has Phi_n-valuation >= 2 for
/// every k <= k_max. The report carries the minimum achieved valuation.
inline CheckReport check_mod_square(long alpha, long r, long n, long d, long k_max) {
    if (k_max < 0) throw std::invalid_argument("check_mod_square: k_max must be non-negative");
    if (n < 1 || d < 1) throw std::invalid_argument("check_mod_square: n and d must be positive");
    detail::Stopwatch clock;
    CheckReport rep;
    rep.description = "modsquare(alpha=" + std::to_string(alpha) + ", r=" + std::to_string(r) +
                      ", n=" + std::to_string(n) + ", d=" + std::to_string(d) + ", k<=" + std::to_string(k_max) + ")";
    rep.modulus = Modulus::phi_power(n, 2);
    rep.valuation.required = rep.modulus.parts;
    std::optional<Valuation> worst;
    for (long k = 0; k <= k_max; ++k) {
        CycloSum diff;
        diff.add(q_poch_factor({r - alpha * n, d, k}) * q_poch_factor({r + alpha * n, d, k}));
        diff.add(-q_poch_factor({r, d, k}).pow(2));
        RatFunc f = diff.value();
        if (!f.is_zero() && phi_valuation(f.den(), n) != 0) {
            rep.status = Status::Error;
            rep.error = "denominator not invertible at cyclotomic " + std::to_string(n);
            rep.elapsed_ms = clock.elapsed_ms();
            return rep;
        }
        Valuation v = phi_valuation(f, n);
        if (!worst || (!v.is_infinite() && (worst->is_infinite() || v.value() < worst->value()))) worst = v;
        ++rep.term_count;
    }
    rep.valuation.achieved.emplace(n, *worst);
    rep.valuation.pass = worst->meets(2);
    rep.status = rep.valuation.pass ? Status::Pass : Status::Fail;
    rep.elapsed_ms = clock.elapsed_ms();
    return rep;
}

// ---------------------------------------------------------------------------
// p-adic check
// ---------------------------------------------------------------------------

/// sum_{k=0}^{(p-1)/2} (6k+1) (1/2)_k^3 / (k!^3 4^k)
inline Rational van_hamme_sum(long p) {
    Rational s = 0;
    const Rational half(1, 2);
    Rational fact = 1, four = 1;
    for (long k = 0; k <= (p - 1) / 2; ++k) {
        if (k > 0) {
            fact *= k;
            four *= 4;
        }
        Rational rf = rising_factorial(half, k);
        s += Rational(6 * k + 1) * rf * rf * rf / (fact * fact * fact * four);
    }
    return s;
}

/// PASS iff the sum is congruent to p(-1)^{(p-1)/2} modulo p^4.
inline CheckReport van_hamme_check(long p) {
    if (p <= 3 || !is_prime(p)) throw HypothesisError({"p prime and p > 3"});
    detail::Stopwatch clock;
    Rational s = van_hamme_sum(p);
    const long sign = ((p - 1) / 2) % 2 == 0 ? 1 : -1;
    Valuation v = rational_p_valuation(s - Rational(sign * p), static_cast<unsigned long>(p));
    CheckReport rep;
    rep.description = "vanhamme(p=" + std::to_string(p) + ")";
    rep.modulus.parts[p] = 4;  // here the index is the prime p, the requirement its power
    rep.valuation.required = rep.modulus.parts;
    rep.valuation.achieved.emplace(p, v);
    rep.valuation.pass = v.meets(4);
    rep.status = rep.valuation.pass ? Status::Pass : Status::Fail;
    rep.term_count = static_cast<std::size_t>((p - 1) / 2 + 1);
    rep.elapsed_ms = clock.elapsed_ms();
    return rep;
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct SweepBounds {
    long d_max = 9;
    long n_max = 40;
    std::optional<long> r_min;  // default -d
    std::optional<long> r_max;  // default d
};

/// All valid cases with 5 <= d <= d_max, r in range, n <= n_max, both
/// truncations; ordered by (d, r, n, truncation) with upper before full.
inline std::vector<TheoremCase> enumerate_cases(Variant variant, const SweepBounds& b) {
    std::vector<TheoremCase> out;
    for (long d = 5; d <= b.d_max; d += 2) {
        const long lo = b.r_min.value_or(-d), hi = b.r_max.value_or(d);
        for (long r = lo; r <= hi; ++r)
            for (long n = 2; n <= b.n_max; ++n)
                for (Truncation t : {Truncation::Upper, Truncation::Full})
                    if (auto v = validate_case(d, r, n, variant, t); v.ok()) out.push_back(*v.value);
    }
    return out;
}

/// Cases a conjecture speaks about, in the same order as enumerate_cases.
inline std::vector<TheoremCase> enumerate_conjecture_cases(Conjecture which, const SweepBounds& b) {
    std::vector<TheoremCase> out;
    SweepBounds bb = b;
    if (which == Conjecture::Conj1) bb.r_min = bb.r_max = 1;
    if (which == Conjecture::Conj2) bb.r_min = bb.r_max = -1;
    for (long d = 5; d <= bb.d_max; d += 2) {
        SweepBounds one = bb;
        one.d_max = d;
        for (Variant v : {Variant::Thm1, Variant::Thm2}) {
            if (which == Conjecture::Conj3 && v == Variant::Thm1) continue;
            for (const auto& c : enumerate_cases(v, one))
                if (c.d == d) out.push_back(c);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const TheoremCase& x, const TheoremCase& y) {
        if (x.d != y.d) return x.d < y.d;
        if (x.r != y.r) return x.r < y.r;
        if (x.n != y.n) return x.n < y.n;
        return x.truncation == Truncation::Upper && y.truncation == Truncation::Full;
    });
    return out;
}

}  // namespace qcongruence
