#pragma once

/**
 * @file identity.hpp
 * @brief Randomized exact checks of the terminating q-series identities.
 *
 * Parameters are drawn as integer powers of q with |exponent| <= 12 from a
 * seeded generator. A draw that makes some denominator vanish is discarded
 * and redrawn; the number of redraws is reported per trial.
 */

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypergeom.hpp"
#include "qobjects.hpp"

namespace qcongruence {

enum class IdentityKind { Andrews, Watson, GasperKm, MultiKm };

inline const char* to_string(IdentityKind k) {
    switch (k) {
        case IdentityKind::Andrews: return "andrews";
        case IdentityKind::Watson: return "watson";
        case IdentityKind::GasperKm: return "gasper-km";
        case IdentityKind::MultiKm: return "multi-km";
    }
    return "?";
}

inline IdentityKind parse_identity_kind(const std::string& s) {
    if (s == "andrews") return IdentityKind::Andrews;
    if (s == "watson") return IdentityKind::Watson;
    if (s == "gasper-km") return IdentityKind::GasperKm;
    if (s == "multi-km") return IdentityKind::MultiKm;
    throw std::invalid_argument("unknown identity kind: " + s);
}

struct IdentityConfig {
    IdentityKind kind = IdentityKind::Andrews;
    long m = 2;           // number of pairs (andrews, gasper-km, multi-km)
    long max_N = 3;       // N is drawn from [1, max_N]
    long trials = 20;
    std::uint64_t seed = 0;
    long max_exponent = 12;
    long max_resamples = 1000;  // per trial
};

struct IdentityTrial {
    long index = 0;
    std::map<std::string, std::vector<long>> params;
    bool holds = false;
    long resamples = 0;
    std::size_t terms = 0;
};

struct IdentityRun {
    IdentityConfig config;
    std::vector<IdentityTrial> trials;
    long resamples = 0;
    bool exhausted = false;  // some trial ran out of redraws

    bool all_hold() const {
        if (exhausted) return false;
        for (const auto& t : trials)
            if (!t.holds) return false;
        return true;
    }
};

namespace detail {

class Draw {
public:
    explicit Draw(std::uint64_t seed) : gen_(seed) {}

    long between(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
    long exponent(long bound) { return between(-bound, bound); }

private:
    std::mt19937_64 gen_;
};

/// One attempt; throws VanishingDenominator (or domain_error) on degenerate draws.
inline IdentityTrial attempt_identity(const IdentityConfig& cfg, Draw& draw) {
    IdentityTrial t;
    const long E = cfg.max_exponent;
    const long N = draw.between(1, std::max<long>(1, cfg.max_N));
    switch (cfg.kind) {
        case IdentityKind::Andrews: {
            AndrewsParams p;
            p.base = draw.between(1, 2);
            p.a = draw.exponent(E);
            p.N = N;
            for (long i = 0; i < cfg.m; ++i) p.pairs.emplace_back(draw.exponent(E), draw.exponent(E));
            t.params["base"] = {p.base};
            t.params["a"] = {p.a};
            for (auto [b, c] : p.pairs) {
                t.params["b"].push_back(b);
                t.params["c"].push_back(c);
            }
            t.params["N"] = {N};
            CycloSum lhs = andrews_lhs_terms(p);
            CycloSum rhs = andrews_multisum_terms(p, andrews_prefactor(p));
            t.terms = lhs.term_count() + rhs.term_count();
            t.holds = lhs.value() == rhs.value();
            break;
        }
        case IdentityKind::Watson: {
            std::vector<long> x(5);
            for (auto& v : x) v = draw.exponent(E);
            t.params["a,b,c,d,e"] = x;
            t.params["N"] = {N};
            WatsonPair w = watson_pair(x[0], x[1], x[2], x[3], x[4], N);
            t.terms = static_cast<std::size_t>(2 * (N + 1));
            t.holds = w.lhs == w.rhs;
            break;
        }
        case IdentityKind::GasperKm:
        case IdentityKind::MultiKm: {
            KarlssonMintonParams p;
            p.base = draw.between(1, 2);
            p.a = draw.exponent(E);
            p.N = N;
            long budget = N - 1;  // keeps nu < N
            for (long i = 0; i < cfg.m; ++i) {
                p.e.push_back(draw.exponent(E));
                const long nj = draw.between(0, budget);
                p.nondeg.push_back(nj);
                budget -= nj;
            }
            t.params["base"] = {p.base};
            t.params["a"] = {p.a};
            t.params["e"] = p.e;
            t.params["n"] = p.nondeg;
            t.params["N"] = {N};
            if (cfg.kind == IdentityKind::GasperKm) {
                t.terms = static_cast<std::size_t>(N + 1);
                t.holds = gasper_terminating_sum(p).is_zero();
            } else {
                CycloSum s = multi_km_terms(p);
                t.terms = s.term_count();
                t.holds = s.value().is_zero();
            }
            break;
        }
    }
    return t;
}

}  // namespace detail

inline IdentityRun run_identity(const IdentityConfig& cfg) {
    if (cfg.trials < 0) throw std::invalid_argument("identity: trials must be non-negative");
    if (cfg.max_N < 1) throw std::invalid_argument("identity: N must be >= 1");
    const long min_m = cfg.kind == IdentityKind::GasperKm ? 1 : 2;
    if (cfg.kind != IdentityKind::Watson && cfg.m < min_m)
        throw std::invalid_argument("identity: m must be >= " + std::to_string(min_m));

    IdentityRun run;
    run.config = cfg;
    detail::Draw draw(cfg.seed);
    for (long i = 0; i < cfg.trials; ++i) {
        long redraws = 0;
        for (;;) {
            try {
                IdentityTrial t = detail::attempt_identity(cfg, draw);
                t.index = i;
                t.resamples = redraws;
                run.trials.push_back(std::move(t));
                break;
            } catch (const std::domain_error&) {
                if (++redraws > cfg.max_resamples) {
                    run.exhausted = true;
                    break;
                }
            }
        }
        run.resamples += redraws;
        if (run.exhausted) break;
    }
    return run;
}

}  // namespace qcongruence
