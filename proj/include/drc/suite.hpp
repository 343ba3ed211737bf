#pragma once

// Deterministic randomized suites. Every check is a JSON case evaluated through eval_single, so a
// failure entry in a report can be re-run verbatim.

#include "drc/cases.hpp"
#include "drc/random.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace drc {

struct UnknownSuite : std::invalid_argument {
    explicit UnknownSuite(const std::string& s) : std::invalid_argument("unknown suite: " + s) {}
};

struct ConfigInvalid : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Per-check numeric tolerances for the analytic suite.
struct Tolerances {
    double shifted = 1e-8;
    double stevens = 1e-9;
    double clog = 1e-12;
    double drdelta_numeric = 1e-6;
};

struct RunConfig {
    CocycleParams params;
    std::uint64_t seed = 1;
    long trials = 0;  // 0: the suite's default count
    long prec = 0;    // 0: the suite's default precision
    double s = 4.0;
    std::optional<double> tol;  // overrides every entry of `tolerances`
    Tolerances tolerances;
    std::vector<std::string> suites;  // empty: all

    void validate() const {
        try {
            params.validate();
        } catch (const ParamsInvalid& e) {
            throw ConfigInvalid(e.what());
        }
        if (trials < 0) throw ConfigInvalid("trials must be positive");
        if (prec < 0) throw ConfigInvalid("precision must be positive");
        if (tol && !(*tol > 0)) throw ConfigInvalid("tolerance must be positive");
        if (!(s > 1)) throw ConfigInvalid("s must exceed 1");
    }
};

struct Failure {
    long trial = 0;
    Json result;  // eval_single output: kind, input and values
};

struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    long trials = 0;
    long checks = 0;
    std::vector<Failure> failures;
    std::optional<double> max_residual;
    double wall_time = 0;

    bool pass() const { return failures.empty(); }

    Json to_json(bool with_time = true) const {
        Json j{{"suite", suite}, {"seed", seed}, {"trials", trials}, {"checks", checks}, {"pass", pass()}};
        Json fs = Json::array();
        for (const auto& f : failures) fs.push_back({{"trial", f.trial}, {"case", f.result}});
        j["failures"] = fs;
        if (max_residual) j["max_residual"] = *max_residual;
        if (with_time) j["wall_time_s"] = wall_time;
        return j;
    }
};

namespace detail {

class SuiteRun {
public:
    SuiteRun(const std::string& name, const RunConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
        rep_.suite = name;
        rep_.seed = cfg.seed;
    }

    Rng& rng() { return rng_; }
    const RunConfig& cfg() const { return cfg_; }
    double tol(double dflt) const { return cfg_.tol ? *cfg_.tol : dflt; }
    long trials(long dflt) const { return cfg_.trials > 0 ? cfg_.trials : dflt; }
    long prec(long dflt) const { return cfg_.prec > 0 ? cfg_.prec : dflt; }

    void check(long trial, const std::string& kind, const Json& payload) {
        ++rep_.checks;
        Json r = eval_single(kind, payload);
        if (r.contains("residual")) {
            double x = r["residual"].get<double>();
            if (!rep_.max_residual || x > *rep_.max_residual) rep_.max_residual = x;
        }
        if (!r.value("pass", false)) rep_.failures.push_back({trial, std::move(r)});
    }

    Report finish(long trials) {
        rep_.trials = trials;
        return std::move(rep_);
    }

private:
    const RunConfig& cfg_;
    Rng rng_;
    Report rep_;
};

inline Json params_json(const CocycleParams& P) { return io::params(P); }

inline Rational random_fraction(Rng& rng, const std::vector<long>& dens) {
    long d = rng.pick(dens);
    return rat(rng.uniform(0, d - 1), d);
}

/// Coset (a, b) not in Z^2 with denominators from `dens`.
inline Vec2 random_torsion_point(Rng& rng, const std::vector<long>& dens) {
    for (;;) {
        Vec2 v{random_fraction(rng, dens), random_fraction(rng, dens)};
        if (!is_integer(v[0]) || !is_integer(v[1])) return v;
    }
}

inline long suite_c(const RunConfig& cfg) { return cfg.params.c; }

inline TestFunctionShape shape_avoiding(const PrimeSet& bad) {
    TestFunctionShape sh;
    sh.primes.clear();
    for (long p : {2, 3, 5, 11, 13})
        if (!bad.count(p)) sh.primes.push_back(p);
    return sh;
}

inline Report suite_integrality(SuiteRun& R) {
    long c = suite_c(R.cfg()), n = R.trials(200);
    PrimeSet S = prime_factors(Int(c));
    TestFunctionShape sh = shape_avoiding(S);
    for (long i = 0; i < n; ++i) {
        Word w = random_gs_word(R.rng(), S, 8);
        TestFunction f = random_test_function(R.rng(), sh);
        R.check(i, "dr_integral", {{"c", c}, {"word", io::word(w)}, {"f", io::test_function(f)}});
    }
    return R.finish(n);
}

inline Report suite_words(SuiteRun& R) {
    long c = suite_c(R.cfg()), n = R.trials(100);
    PrimeSet S = prime_factors(Int(c));
    TestFunctionShape sh = shape_avoiding(S);
    for (long i = 0; i < n; ++i) {
        Word w = random_gs_word(R.rng(), S, 8);
        TestFunction f = random_test_function(R.rng(), sh);
        R.check(i, "word_independence", {{"c", c}, {"word", io::word(w)}, {"f", io::test_function(f)}});
        Mat2 g1 = word_product(random_gs_word(R.rng(), S, 4)), g2 = word_product(random_gs_word(R.rng(), S, 4));
        TestFunction h = random_test_function(R.rng(), sh);
        R.check(i, "cocycle_law", {{"c", c}, {"g1", io::matrix(g1)}, {"g2", io::matrix(g2)}, {"f", io::test_function(h)}});
    }
    return R.finish(n);
}

inline Report suite_torsion(SuiteRun& R) {
    long c = suite_c(R.cfg()), n = R.trials(50);
    TestFunctionShape sh = shape_avoiding(prime_factors(Int(c)));
    for (long i = 0; i < n; ++i)
        R.check(i, "torsion", {{"c", c}, {"f", io::test_function(random_test_function(R.rng(), sh))}});
    return R.finish(n);
}

inline Report suite_psi_integrality(SuiteRun& R) {
    const CocycleParams& P = R.cfg().params;
    long n = R.trials(200);
    TestFunctionShape sh = shape_avoiding(P.Nset());
    for (long i = 0; i < n; ++i)
        R.check(i, "psi_delta", {{"params", params_json(P)}, {"f", io::test_function(random_test_function(R.rng(), sh))}});
    return R.finish(n);
}

inline Report suite_comparison(SuiteRun& R) {
    const CocycleParams& P = R.cfg().params;
    long n = R.trials(100), mixed = std::max(1L, n / 5);
    TestFunctionShape sh;
    sh.primes = {P.p};
    Json pj = params_json(P);
    Json pinned_f = io::test_function(TestFunction::coset({rat(1, P.p), 0}));
    CocycleParams D0;
    if (P.c == D0.c && P.N == D0.N && P.p == D0.p && P.delta == D0.delta)
        R.check(0, "dd_cusp", {{"params", pj}, {"cusp", "1/5"}, {"f", pinned_f}, {"expect", "-24"}});
    R.check(0, "compare", {{"params", pj}, {"g1", io::matrix(Mat2{1, 0, Rational(P.N), 1})}, {"f", pinned_f}});
    for (long i = 0; i < n; ++i) {
        Mat2 g = random_gamma0(R.rng(), P.N, 50);
        TestFunction f = random_test_function(R.rng(), sh);
        R.check(i, "compare", {{"params", pj}, {"g1", io::matrix(g)}, {"f", io::test_function(f)}});
    }
    // products of Gamma_0(N) elements and diagonal p-power matrices
    Rational pq(P.p);
    for (long i = 0; i < mixed; ++i) {
        Mat2 g = Mat2::identity();
        long len = R.rng().uniform(1, 3);
        for (long j = 0; j < len; ++j) {
            if (R.rng().coin()) {
                g = g * random_gamma0(R.rng(), P.N, 30);
            } else {
                long e1 = R.rng().uniform(-1, 1), e2 = R.rng().uniform(-1, 1);
                g = g * Mat2::diag(pow_q(pq, e1), pow_q(pq, e2));
            }
        }
        TestFunction f = random_test_function(R.rng(), sh);
        R.check(n + i, "compare", {{"params", pj}, {"g1", io::matrix(g)}, {"f", io::test_function(f)}});
    }
    return R.finish(n + mixed);
}

inline Report suite_distribution(SuiteRun& R) {
    long c = suite_c(R.cfg()), n = R.trials(50);
    const std::vector<std::string> rank1{"b0", "b1", "b2", "b3", "b4", "delta0", "b1frac"};
    const std::vector<std::string> rank2{"pi_c", "psi", "b2b0", "b1b1", "tensor:delta0,b1", "tensor:b3,b1", "tensor:b1frac,b2"};
    std::vector<long> ts;
    for (long t : {2, 3, 5})
        if (t % c) ts.push_back(t);
    const std::vector<long> dens{1, 2, 3, 4, 5, 6, 7, 9, 11, 12};
    for (long i = 0; i < n; ++i) {
        for (const auto& name : rank1) {
            Rational v = random_fraction(R.rng(), dens) + Rational(R.rng().uniform(-2, 2));
            for (long t : ts) R.check(i, "distribution_relation", {{"name", name}, {"c", c}, {"t", t}, {"v", io::rational(v)}});
        }
        for (const auto& name : rank2) {
            Vec2 v = random_torsion_point(R.rng(), dens);
            v[0] += R.rng().uniform(-2, 2);
            for (long t : ts) R.check(i, "distribution_relation", {{"name", name}, {"c", c}, {"t", t}, {"v", io::vec(v)}});
        }
    }
    return R.finish(n);
}

inline Report suite_qseries(SuiteRun& R) {
    const CocycleParams& P = R.cfg().params;
    long c = P.c, n = R.trials(20), prec = R.prec(20), small = std::max(1L, n / 2);
    std::vector<long> dens;
    for (long d = 1; d <= 12; ++d)
        if (std::gcd(d, c) == 1) dens.push_back(d);
    for (long i = 0; i < n; ++i) {
        Vec2 v = random_torsion_point(R.rng(), dens);
        Rational a = v[0] + Rational(R.rng().uniform(0, 1)), b = v[1];
        R.check(i, "theta_decomposition", {{"a", io::rational(a)}, {"b", io::rational(b)}, {"prec", prec}});
        R.check(i, "ks_decomposition", {{"c", c}, {"a", io::rational(a)}, {"b", io::rational(b)}, {"prec", prec}});
        R.check(i, "u_t_invariance", {{"a", io::rational(v[0])}, {"b", io::rational(b)}, {"prec", prec}});
    }
    const std::vector<long> small_dens{1, 2, 3, 4, 5};
    for (long nn : {2L, 3L})
        for (long i = 0; i < small; ++i) {
            Vec2 v = random_torsion_point(R.rng(), small_dens);
            while (is_integer(v[0] * nn) && is_integer(v[1] * nn)) v = random_torsion_point(R.rng(), small_dens);
            R.check(i, "u_distribution", {{"a", io::rational(v[0])}, {"b", io::rational(v[1])}, {"n", nn}, {"prec", prec}});
        }
    const std::vector<long> fdens{2, 3, 4, P.p};
    for (long i = 0; i < small; ++i) {
        std::vector<Term> ts;
        long k = R.rng().uniform(1, 2);
        for (long j = 0; j < k; ++j) {
            long da = R.rng().pick(fdens), db = R.rng().pick(fdens);
            ts.push_back({Int(R.rng().uniform(1, 3)), {{rat(R.rng().uniform(1, da - 1), da), rat(R.rng().uniform(0, db - 1), db)}, Lattice()}});
        }
        R.check(i, "ks_delta_order", {{"params", params_json(P)}, {"f", io::test_function(TestFunction::canonicalize(ts))}});
    }
    for (long p : {2L, 3L}) {
        CocycleParams Q = P;
        Q.p = p;
        try {
            Q.validate();
        } catch (const ParamsInvalid&) {
            continue;
        }
        R.check(0, "eta_delta", {{"params", params_json(Q)}, {"prec", R.prec(30)}});
    }
    return R.finish(n);
}

/// Numeric period checks; `only` restricts to one family (shifted, stevens, clog, drdelta-num).
inline Report period_checks(SuiteRun& R, const std::string& only) {
    const RunConfig& cfg = R.cfg();
    const Tolerances& T = cfg.tolerances;
    auto want = [&](const char* k) { return only.empty() || only == k; };
    long n = R.trials(20);
    for (long i = 0; i < n; ++i) {
        if (want("shifted")) {
            long beta = R.rng().uniform(1, 12), alpha;
            do alpha = R.rng().uniform(-12, 12);
            while (std::gcd(alpha, beta) != 1);
            // even trials take D > 1 whenever beta allows it
            std::vector<long> divs;
            for (long d = 1; d <= beta; ++d)
                if (beta % d == 0 && (d > 1 || beta == 1 || i % 2)) divs.push_back(d);
            long D = R.rng().pick(divs);
            Vec2 ab = random_torsion_point(R.rng(), {1, 2, 3, 4, 5, 6, 8, 10, 12});
            R.check(i, "shifted_period", {{"alpha", alpha}, {"beta", beta}, {"a", io::rational(ab[0])}, {"b", io::rational(ab[1])},
                                          {"s", cfg.s}, {"D", D}, {"tol", R.tol(T.shifted)}});
        }
        if (want("stevens")) {
            Vec2 st = random_torsion_point(R.rng(), {1, 2, 3, 4, 5, 6, 7, 8, 12});
            R.check(i, "stevens", {{"a", io::rational(st[0])}, {"b", io::rational(st[1])}, {"tol", R.tol(T.stevens)}});
        }
        if (want("clog")) {
            Rational x = random_fraction(R.rng(), {2, 3, 5, 7, 12, 97}) + Rational(R.rng().uniform(-2, 2));
            if (is_integer(x)) x += rat(1, 3);
            R.check(i, "clog_rclog", {{"x", io::rational(x)}, {"tol", R.tol(T.clog)}});
        }
    }
    if (want("drdelta-num")) {
        const CocycleParams& P = cfg.params;
        TestFunctionShape sh;
        sh.primes = {P.p};
        long m = only.empty() ? std::max(1L, n / 2) : n;
        Json pj = params_json(P);
        R.check(0, "drdelta_numeric", {{"params", pj}, {"g", io::matrix(Mat2{1, 0, Rational(P.N), 1})},
                                       {"f", io::test_function(TestFunction::coset({rat(1, P.p), 0}))}, {"tol", R.tol(T.drdelta_numeric)}});
        for (long i = 0; i < m; ++i) {
            Mat2 g = random_gamma0(R.rng(), P.N, 50);
            TestFunction f = random_test_function(R.rng(), sh);
            R.check(i, "drdelta_numeric", {{"params", pj}, {"g", io::matrix(g)}, {"f", io::test_function(f)}, {"tol", R.tol(T.drdelta_numeric)}});
        }
    }
    return R.finish(n);
}

inline Report suite_periods(SuiteRun& R) { return period_checks(R, ""); }

inline Lattice random_sublattice(Rng& rng, const Lattice& L) {
    long n1 = rng.uniform(1, 3), n2 = rng.uniform(1, 3), k = rng.uniform(0, 2);
    Lattice M(Mat2::diag(Rational(n1), Rational(n2)) * Mat2::T(Rational(k)) * L.basis());
    return lattice_intersect(L, M);
}

inline Report suite_normal_forms(SuiteRun& R) {
    long c = suite_c(R.cfg()), n = R.trials(500);
    PrimeSet S = prime_factors(Int(c));
    TestFunctionShape sh = shape_avoiding(S);
    const std::vector<std::string> dists{"b2b0", "b1b1", "pi_c", "psi", "tensor:delta0,b1"};
    for (long i = 0; i < n; ++i) {
        TestFunction f = random_test_function(R.rng(), sh);
        switch (i % 3) {
            case 0:
                R.check(i, "canonical_idempotence", {{"f", io::test_function(f)}, {"finer", io::lattice(random_sublattice(R.rng(), f.lattice()))}});
                break;
            case 1:
                R.check(i, "refinement_invariance", {{"name", R.rng().pick(dists)}, {"c", c}, {"f", io::test_function(f)},
                                                     {"finer", io::lattice(random_sublattice(R.rng(), f.lattice()))}});
                break;
            default: {
                Mat2 g = word_product(random_gs_word(R.rng(), S, 4)), h = word_product(random_gs_word(R.rng(), S, 4));
                R.check(i, "action_contravariance", {{"f", io::test_function(f)}, {"g", io::matrix(g)}, {"h", io::matrix(h)}});
            }
        }
    }
    return R.finish(n);
}

using SuiteFn = Report (*)(SuiteRun&);

inline const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
    static const std::vector<std::pair<std::string, SuiteFn>> t{
        {"integrality", suite_integrality}, {"words", suite_words},           {"torsion", suite_torsion},
        {"psi-integrality", suite_psi_integrality}, {"comparison", suite_comparison}, {"distribution", suite_distribution},
        {"qseries", suite_qseries},         {"periods", suite_periods},       {"normal-forms", suite_normal_forms},
    };
    return t;
}

}  // namespace detail

inline std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& [name, fn] : detail::suite_table()) out.push_back(name);
    return out;
}

inline Report run_suite(const RunConfig& cfg, const std::string& name) {
    cfg.validate();
    for (const auto& [n, fn] : detail::suite_table()) {
        if (n != name) continue;
        auto t0 = std::chrono::steady_clock::now();
        detail::SuiteRun run(name, cfg);
        Report r = fn(run);
        r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    }
    throw UnknownSuite(name);
}

/// One family of numeric period checks: shifted, stevens, clog or drdelta-num.
inline Report run_period_check(const RunConfig& cfg, const std::string& which) {
    if (which != "shifted" && which != "stevens" && which != "clog" && which != "drdelta-num") throw UnknownSuite("periods:" + which);
    cfg.validate();
    auto t0 = std::chrono::steady_clock::now();
    detail::SuiteRun run("periods:" + which, cfg);
    Report r = detail::period_checks(run, which);
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

/// {"params": {...}, "seed": n, "trials": n, "prec": n, "s": x, "tol": x, "suites": [...]}.
inline RunConfig config_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigInvalid("config must be a JSON object");
    RunConfig cfg;
    try {
        if (j.contains("params")) cfg.params = io::to_params(j["params"], "/params");
        if (j.contains("seed")) {
            if (!j["seed"].is_number_unsigned()) throw SchemaError("/seed", "expected a nonnegative integer");
            cfg.seed = j["seed"].get<std::uint64_t>();
        }
        if (j.contains("trials")) cfg.trials = io::to_small(j["trials"], "/trials");
        if (j.contains("prec")) cfg.prec = io::to_small(j["prec"], "/prec");
        if (j.contains("s")) cfg.s = io::to_double(j["s"], "/s");
        if (j.contains("tol")) cfg.tol = io::to_double(j["tol"], "/tol");
        if (j.contains("suites")) {
            if (!j["suites"].is_array()) throw SchemaError("/suites", "expected an array of suite names");
            for (std::size_t i = 0; i < j["suites"].size(); ++i) {
                if (!j["suites"][i].is_string()) throw SchemaError(io::sub("/suites", i), "expected a string");
                cfg.suites.push_back(j["suites"][i].get<std::string>());
            }
        }
    } catch (const ParamsInvalid& e) {
        throw ConfigInvalid(e.what());
    } catch (const SchemaError& e) {
        throw ConfigInvalid(e.what());
    }
    if (j.contains("trials") && cfg.trials < 1) throw ConfigInvalid("trials must be positive");
    if (j.contains("prec") && cfg.prec < 1) throw ConfigInvalid("precision must be positive");
    cfg.validate();
    return cfg;
}

}  // namespace drc
