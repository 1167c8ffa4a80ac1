// Command-line front end: single checks, identity fuzzing and case sweeps.
// Records go to stdout (or --output) as JSON Lines, summaries to stderr.
//
// Exit codes: 0 success, 1 mathematical FAIL, 2 usage or hypothesis error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qcongruence/qcongruence.hpp>
#include <qcongruence/report.hpp>

namespace qc = qcongruence;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

constexpr long kMaxSweepD = 15;
constexpr long kMaxSweepN = 60;

struct RunConfig {
    std::string command;
    std::string target;
    std::optional<long> d, r, n, p, power;
    std::string trunc = "upper";
    long alpha = 1;
    std::optional<long> k_max;
    long m = 2;
    long N = 3;
    long trials = 20;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    long d_max = 9, n_max = 40;
    std::optional<long> r_min, r_max;
    std::string theorem, conjecture;
    std::string output;
    bool oracle = false;
    bool timing = false;
};

class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::runtime_error("cannot open output file " + path);
        }
    }

    void write(const qc::Json& j) { out() << j.dump() << '\n'; }
    void flush() { out().flush(); }

private:
    std::ostream& out() { return file_ ? *file_ : std::cout; }
    std::unique_ptr<std::ofstream> file_;
};

int exit_code(qc::Status s) {
    switch (s) {
        case qc::Status::Pass: return kExitPass;
        case qc::Status::Fail: return kExitFail;
        case qc::Status::Error: return kExitError;
    }
    return kExitError;
}

long need(const std::optional<long>& v, const char* flag) {
    if (!v) throw std::invalid_argument(std::string("missing required option ") + flag);
    return *v;
}

qc::Truncation parse_trunc(const std::string& s) {
    return s == "full" ? qc::Truncation::Full : qc::Truncation::Upper;
}

qc::RecordContext context(const RunConfig& cfg) {
    return {cfg.command, cfg.seed, cfg.timing};
}

/// Reruns the case through the brute-force divisibility oracle and attaches
/// its verdict. A disagreement turns the record into an ERROR.
void attach_oracle(qc::Json& rec, qc::CheckReport& rep, const qc::RatFunc& value) {
    const qc::Status o = qc::oracle_verdict(value, rep.modulus);
    rec["oracle"] = qc::to_string(o);
    if (o != rep.status) {
        rec["oracle_agrees"] = false;
        rep.status = qc::Status::Error;
        rec["status"] = qc::to_string(rep.status);
    } else {
        rec["oracle_agrees"] = true;
    }
}

struct CaseResult {
    qc::CheckReport report;
    qc::Json record;
};

CaseResult run_case(const qc::TheoremCase& c, const qc::Modulus& mod, const std::string& label,
                    const RunConfig& cfg) {
    CaseResult out{qc::check_case(c, mod, label), {}};
    out.record = qc::report_json(out.report, context(cfg));
    if (cfg.oracle) attach_oracle(out.record, out.report, qc::theorem_sum(c));
    return out;
}

qc::Modulus case_modulus(const RunConfig& cfg, const qc::TheoremCase& c, std::optional<qc::Conjecture> conj) {
    if (!conj) return cfg.power ? qc::Modulus::q_integer_times_phi(c.n, *cfg.power) : qc::theorem_modulus(c);
    qc::Modulus mod = qc::conjecture_modulus(c, *conj);
    if (!cfg.power) return mod;
    return *conj == qc::Conjecture::Conj3 ? qc::Modulus::q_integer_times_phi(c.n, *cfg.power)
                                          : qc::Modulus::phi_power(c.n, *cfg.power);
}

qc::Conjecture parse_conjecture(const std::string& s) {
    if (s == "conj1") return qc::Conjecture::Conj1;
    if (s == "conj2") return qc::Conjecture::Conj2;
    return qc::Conjecture::Conj3;
}

/// A theorem case for verify; throws HypothesisError on bad parameters.
qc::TheoremCase verify_case(const RunConfig& cfg, std::optional<qc::Conjecture> conj) {
    const long d = need(cfg.d, "--d"), n = need(cfg.n, "--n");
    long r;
    if (conj == qc::Conjecture::Conj1 || conj == qc::Conjecture::Conj2) {
        const long fixed = conj == qc::Conjecture::Conj1 ? 1 : -1;
        if (cfg.r && *cfg.r != fixed)
            throw qc::HypothesisError({std::string(qc::to_string(*conj)) + " requires r = " + std::to_string(fixed)});
        r = fixed;
    } else {
        r = need(cfg.r, "--r");
    }
    qc::Variant variant;
    if (conj) {
        auto v = qc::conjecture_variant(d, r, n);
        if (!v) throw qc::HypothesisError({"n = -r (mod d) or 2n = -r (mod d)"});
        variant = *v;
    } else {
        variant = cfg.target == "thm1" ? qc::Variant::Thm1 : qc::Variant::Thm2;
    }
    return qc::require_case(d, r, n, variant, parse_trunc(cfg.trunc));
}

int cmd_verify(const RunConfig& cfg, Sink& sink) {
    const std::string& t = cfg.target;
    qc::CheckReport rep;
    qc::Json rec;

    if (t == "thm1" || t == "thm2" || t == "conj1" || t == "conj2" || t == "conj3") {
        std::optional<qc::Conjecture> conj;
        if (t.starts_with("conj")) conj = parse_conjecture(t);
        const qc::TheoremCase c = verify_case(cfg, conj);
        CaseResult res = run_case(c, case_modulus(cfg, c, conj), conj ? t : std::string(qc::to_string(c.variant)), cfg);
        rep = std::move(res.report);
        rec = std::move(res.record);
    } else if (t == "lemma3") {
        const long d = need(cfg.d, "--d"), r = need(cfg.r, "--r"), n = need(cfg.n, "--n");
        const auto which = cfg.trunc == "full" ? qc::Lemma3Truncation::Full : qc::Lemma3Truncation::Solved;
        rep = qc::check_lemma3(d, r, n, which);
        const long M = which == qc::Lemma3Truncation::Full ? n - 1 : qc::lemma3_bound(d, r, n);
        rec = qc::report_json(rep, context(cfg), {{"d", d}, {"r", r}, {"n", n}, {"M", M}});
        if (cfg.oracle) attach_oracle(rec, rep, qc::truncated_sum(d, r, M).value);
    } else if (t == "lemma4") {
        const long d = need(cfg.d, "--d"), r = need(cfg.r, "--r"), n = need(cfg.n, "--n");
        const bool ok = qc::check_lemma4(d, r, n);
        rep.description = "lemma4(d=" + std::to_string(d) + ", r=" + std::to_string(r) + ", n=" + std::to_string(n) + ")";
        rep.status = ok ? qc::Status::Pass : qc::Status::Fail;
        rep.term_count = qc::lemma4_progression(d, r, n).size();
        rec = qc::report_json(rep, context(cfg), {{"d", d}, {"r", r}, {"n", n}});
    } else if (t == "modsquare") {
        const long d = need(cfg.d, "--d"), r = need(cfg.r, "--r"), n = need(cfg.n, "--n");
        const long k_max = cfg.k_max.value_or(n);
        rep = qc::check_mod_square(cfg.alpha, r, n, d, k_max);
        rec = qc::report_json(rep, context(cfg), {{"alpha", cfg.alpha}, {"d", d}, {"r", r}, {"n", n}, {"k_max", k_max}});
    } else if (t == "vanhamme") {
        const long p = need(cfg.p, "--p");
        rep = qc::van_hamme_check(p);
        rec = qc::report_json(rep, context(cfg), {{"p", p}});
    } else {
        throw std::invalid_argument("unknown verify target " + t);
    }

    sink.write(rec);
    std::cerr << rep.description << ": " << qc::to_string(rep.status);
    if (!rep.error.empty()) std::cerr << " (" << rep.error << ")";
    std::cerr << '\n';
    return exit_code(rep.status);
}

int cmd_identity(const RunConfig& cfg, Sink& sink) {
    qc::IdentityConfig ic;
    ic.kind = qc::parse_identity_kind(cfg.target);
    ic.m = cfg.m;
    ic.max_N = cfg.N;
    ic.trials = cfg.trials;
    ic.seed = cfg.seed;
    const qc::IdentityRun run = qc::run_identity(ic);
    long held = 0;
    for (const auto& t : run.trials) {
        sink.write(qc::trial_json(t, ic));
        held += t.holds ? 1 : 0;
    }
    std::cerr << "identity " << cfg.target << ": " << held << "/" << ic.trials << " hold, " << run.resamples
              << " resampled draws, seed " << cfg.seed << '\n';
    if (run.exhausted) {
        std::cerr << "error: too many degenerate draws\n";
        return kExitError;
    }
    return run.all_hold() ? kExitPass : kExitFail;
}

int cmd_sweep(const RunConfig& cfg, Sink& sink) {
    if (cfg.theorem.empty() == cfg.conjecture.empty())
        throw std::invalid_argument("sweep needs exactly one of --theorem or --conjecture");
    if (cfg.d_max > kMaxSweepD || cfg.n_max > kMaxSweepN)
        throw std::invalid_argument("sweep bounds above the limits d-max <= " + std::to_string(kMaxSweepD) +
                                    ", n-max <= " + std::to_string(kMaxSweepN));
    if (cfg.d_max < 1 || cfg.n_max < 1) throw std::invalid_argument("sweep bounds must be positive");

    qc::SweepBounds b;
    b.d_max = cfg.d_max;
    b.n_max = cfg.n_max;
    b.r_min = cfg.r_min;
    b.r_max = cfg.r_max;

    std::optional<qc::Conjecture> conj;
    std::vector<qc::TheoremCase> cases;
    std::string label;
    if (!cfg.conjecture.empty()) {
        conj = parse_conjecture(cfg.conjecture);
        cases = qc::enumerate_conjecture_cases(*conj, b);
        label = cfg.conjecture;
    } else {
        const auto v = cfg.theorem == "thm1" ? qc::Variant::Thm1 : qc::Variant::Thm2;
        cases = qc::enumerate_cases(v, b);
        label = cfg.theorem;
    }

    auto results = qc::parallel_map(cases, cfg.jobs, [&](const qc::TheoremCase& c) {
        return run_case(c, case_modulus(cfg, c, conj), label, cfg);
    });

    std::size_t pass = 0, fail = 0, error = 0;
    for (const auto& r : results) {
        sink.write(r.record);
        switch (r.report.status) {
            case qc::Status::Pass: ++pass; break;
            case qc::Status::Fail: ++fail; break;
            case qc::Status::Error: ++error; break;
        }
    }
    std::cerr << "sweep " << label << ": " << results.size() << " cases, " << pass << " PASS, " << fail << " FAIL, "
              << error << " ERROR\n";
    if (conj) return kExitPass;
    if (error > 0) return kExitError;
    return fail > 0 ? kExitFail : kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of truncated q-series congruences"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto output_flags = [&](CLI::App* sub) {
        sub->add_option("--output", cfg.output, "Write JSON Lines here instead of stdout");
        sub->add_option("--seed", cfg.seed, "Random seed (echoed in every record)");
    };
    auto check_flags = [&](CLI::App* sub) {
        sub->add_flag("--oracle", cfg.oracle, "Cross-check every verdict with brute-force divisibility");
        sub->add_flag("--timing", cfg.timing, "Include elapsed_ms in records");
    };

    auto* verify = app.add_subcommand("verify", "Check one case");
    verify->add_option("target", cfg.target)
        ->required()
        ->check(CLI::IsMember({"thm1", "thm2", "conj1", "conj2", "conj3", "lemma3", "lemma4", "modsquare", "vanhamme"}));
    verify->add_option("--d", cfg.d);
    verify->add_option("--r", cfg.r);
    verify->add_option("--n", cfg.n);
    verify->add_option("--p", cfg.p, "Prime for vanhamme");
    verify->add_option("--trunc", cfg.trunc, "Truncation (lemma3: upper = solved bound, full = n-1)")
        ->check(CLI::IsMember({"upper", "full"}));
    verify->add_option("--power", cfg.power, "Override the exponent of Phi_n in the modulus");
    verify->add_option("--alpha", cfg.alpha, "modsquare shift multiplier");
    verify->add_option("--k-max", cfg.k_max, "modsquare: largest k (default n)")->check(CLI::NonNegativeNumber);
    output_flags(verify);
    check_flags(verify);

    auto* identity = app.add_subcommand("identity", "Randomized exact identity checks");
    identity->add_option("kind", cfg.target)
        ->required()
        ->check(CLI::IsMember({"andrews", "watson", "gasper-km", "multi-km"}));
    identity->add_option("--m", cfg.m, "Number of parameter pairs");
    identity->add_option("--N", cfg.N, "Largest termination order drawn")->check(CLI::PositiveNumber);
    identity->add_option("--trials", cfg.trials)->check(CLI::NonNegativeNumber);
    output_flags(identity);

    auto* sweep = app.add_subcommand("sweep", "Check every valid case in a grid");
    auto* th = sweep->add_option("--theorem", cfg.theorem)->check(CLI::IsMember({"thm1", "thm2"}));
    sweep->add_option("--conjecture", cfg.conjecture)->check(CLI::IsMember({"conj1", "conj2", "conj3"}))->excludes(th);
    sweep->add_option("--d-max", cfg.d_max);
    sweep->add_option("--n-max", cfg.n_max);
    sweep->add_option("--r-min", cfg.r_min);
    sweep->add_option("--r-max", cfg.r_max);
    sweep->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
    output_flags(sweep);
    check_flags(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        Sink sink(cfg.output);
        int code;
        if (verify->parsed()) {
            cfg.command = "verify " + cfg.target;
            code = cmd_verify(cfg, sink);
        } else if (identity->parsed()) {
            cfg.command = "identity " + cfg.target;
            code = cmd_identity(cfg, sink);
        } else {
            cfg.command = "sweep";
            code = cmd_sweep(cfg, sink);
        }
        sink.flush();
        return code;
    } catch (const qc::HypothesisError& e) {
        std::cerr << "error: " << e.what() << '\n';
        qc::Json rec{{"command", cfg.command}, {"status", "ERROR"}, {"violations", e.violations()}, {"seed", cfg.seed}};
        std::cout << rec.dump() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
}
