// Command-line front end: single evaluations, verifications and randomized suites, JSON on stdout.
// Exit status: 0 pass, 1 verification failure, 2 usage or configuration error.

#include "drc/suite.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using drc::Json;

constexpr int kPass = 0, kFail = 1, kUsage = 2;

/// Inline JSON text, or "@path" to read it from a file.
Json parse_json_arg(const std::string& arg, const std::string& what) {
    std::string text = arg;
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw drc::SchemaError("/" + what, "cannot read " + arg.substr(1));
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw drc::SchemaError("/" + what, e.what());
    }
}

int emit(const Json& j) {
    std::cout << j.dump(2) << "\n";
    if (j.contains("pass") && j["pass"].is_boolean()) return j["pass"].get<bool>() ? kPass : kFail;
    return kPass;
}

int emit_error(const std::string& msg, const std::string& path = {}) {
    Json e{{"error", msg}};
    if (!path.empty()) e["path"] = path;
    std::cerr << e.dump() << "\n";
    return kUsage;
}

struct Common {
    std::uint64_t seed = 1;
    long trials = 0;
    long prec = 0;
    double tol = 0;
    std::string params;
};

drc::RunConfig make_config(const Common& o) {
    drc::RunConfig cfg;
    if (!o.params.empty()) {
        try {
            cfg.params = drc::io::to_params(parse_json_arg(o.params, "params"), "/params");
        } catch (const drc::ParamsInvalid& e) {
            throw drc::ConfigInvalid(e.what());
        }
    }
    cfg.seed = o.seed;
    cfg.trials = o.trials;
    cfg.prec = o.prec;
    if (o.tol > 0) cfg.tol = o.tol;
    cfg.validate();
    return cfg;
}

void add_common(CLI::App* app, Common& o, bool random) {
    if (random) {
        app->add_option("--seed", o.seed, "random seed");
        app->add_option("--trials", o.trials, "number of random trials")->check(CLI::PositiveNumber);
        app->add_option("--tol", o.tol, "numeric tolerance")->check(CLI::PositiveNumber);
    }
    app->add_option("--prec", o.prec, "q-expansion precision")->check(CLI::PositiveNumber);
    app->add_option("--params", o.params, "cocycle parameters as JSON, e.g. {\"c\":7,\"N\":5,\"p\":11,\"delta\":{\"1\":5,\"5\":-1}}");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dedekind-Rademacher and Darmon-Dasgupta cocycles: exact evaluation and verification"};
    app.require_subcommand(1);
    std::function<int()> action;

    // dist eval
    auto* dist = app.add_subcommand("dist", "distributions on Q^2");
    dist->require_subcommand(1);
    auto* dist_eval = dist->add_subcommand("eval", "evaluate a distribution on a test function");
    std::string dname, dfun, ddelta;
    long dc = 7;
    dist_eval->add_option("--name", dname, "b1b1|b2b0|pi_c|psi|psi_delta|tensor:X,Y")->required();
    dist_eval->add_option("--c", dc, "smoothing integer");
    dist_eval->add_option("--delta", ddelta, "delta as D:n,...");
    dist_eval->add_option("--f", dfun, "test function JSON (or @file)")->required();
    dist_eval->callback([&] {
        action = [&] {
            Json p{{"name", dname}, {"c", dc}, {"f", parse_json_arg(dfun, "f")}};
            if (!ddelta.empty()) p["delta"] = ddelta;
            return emit(drc::eval_single("dist", p));
        };
    });

    // dedekind C
    auto* ded = app.add_subcommand("dedekind", "Dedekind-Bernoulli sums");
    ded->require_subcommand(1);
    auto* ded_c = ded->add_subcommand("C", "C(alpha, beta, a, b)");
    std::string ca, cb, calpha, cbeta;
    ded_c->add_option("--alpha", calpha)->required();
    ded_c->add_option("--beta", cbeta)->required();
    ded_c->add_option("--a", ca)->required();
    ded_c->add_option("--b", cb)->required();
    ded_c->callback([&] {
        action = [&] { return emit(drc::eval_single("dedekind_C", {{"alpha", calpha}, {"beta", cbeta}, {"a", ca}, {"b", cb}})); };
    });

    // cocycle eval / verify
    auto* coc = app.add_subcommand("cocycle", "cocycle values and randomized verification");
    coc->require_subcommand(1);
    auto* coc_eval = coc->add_subcommand("eval", "value of one cocycle on (g0, g1) and f");
    std::string cwhich, cg0, cg1, cf;
    long cc = 0;
    Common ceo;
    coc_eval->add_option("--which", cwhich, "dr|drdelta|dd|ddc|compare")
        ->required()
        ->check(CLI::IsMember({"dr", "drdelta", "dd", "ddc", "compare"}));
    coc_eval->add_option("--g0", cg0, "matrix JSON, default identity");
    coc_eval->add_option("--g1", cg1, "matrix JSON")->required();
    coc_eval->add_option("--f", cf, "test function JSON")->required();
    coc_eval->add_option("--c", cc, "smoothing integer for dr (default from params)");
    add_common(coc_eval, ceo, false);
    coc_eval->callback([&] {
        action = [&] {
            drc::RunConfig cfg = make_config(ceo);
            Json p{{"g1", parse_json_arg(cg1, "g1")}, {"f", parse_json_arg(cf, "f")}};
            if (!cg0.empty()) p["g0"] = parse_json_arg(cg0, "g0");
            if (cwhich == "dr") {
                p["c"] = cc > 0 ? cc : cfg.params.c;
            } else {
                p["params"] = drc::io::params(cfg.params);
            }
            return emit(drc::eval_single(cwhich, p));
        };
    });
    auto* coc_verify = coc->add_subcommand("verify", "randomized cocycle suite");
    std::string csuite;
    Common cvo;
    coc_verify->add_option("--suite", csuite, "integrality|words|torsion|psi-integrality|comparison")->required();
    add_common(coc_verify, cvo, true);
    coc_verify->callback([&] {
        action = [&] {
            if (csuite != "integrality" && csuite != "words" && csuite != "torsion" && csuite != "psi-integrality" &&
                csuite != "comparison")
                throw drc::UnknownSuite(csuite);
            return emit(drc::run_suite(make_config(cvo), csuite).to_json());
        };
    });

    // qseries verify
    auto* qs = app.add_subcommand("qseries", "q-expansion identities");
    qs->require_subcommand(1);
    auto* qs_verify = qs->add_subcommand("verify", "check one q-series identity exactly");
    std::string qwhich;
    Common qo;
    qs_verify->add_option("--which", qwhich, "theta|ks|u-dist|eta-delta|t-invar")
        ->required()
        ->check(CLI::IsMember({"theta", "ks", "u-dist", "eta-delta", "t-invar"}));
    add_common(qs_verify, qo, false);
    qs_verify->callback([&] {
        action = [&] {
            Json in = qo.params.empty() ? Json::object() : parse_json_arg(qo.params, "params");
            if (!in.is_object()) throw drc::SchemaError("/params", "expected an object");
            Json p = in;
            std::string kind;
            if (qwhich == "theta") kind = "theta_decomposition";
            else if (qwhich == "ks") kind = "ks_decomposition";
            else if (qwhich == "u-dist") kind = "u_distribution";
            else if (qwhich == "t-invar") kind = "u_t_invariance";
            else {
                kind = "eta_delta";
                p = Json{{"params", in}};
            }
            if (qo.prec > 0) p["prec"] = qo.prec;
            return emit(drc::eval_single(kind, p));
        };
    });

    // periods check
    auto* per = app.add_subcommand("periods", "numeric period identities");
    per->require_subcommand(1);
    auto* per_check = per->add_subcommand("check", "randomized numeric checks, report max residual");
    std::string pwhich;
    double ps = 4.0;
    Common po;
    per_check->add_option("--which", pwhich, "shifted|stevens|clog|drdelta-num")
        ->required()
        ->check(CLI::IsMember({"shifted", "stevens", "clog", "drdelta-num"}));
    per_check->add_option("--s", ps, "real point s > 1 for the shifted-period check");
    add_common(per_check, po, true);
    per_check->callback([&] {
        action = [&] {
            drc::RunConfig cfg = make_config(po);
            cfg.s = ps;
            cfg.validate();
            return emit(drc::run_period_check(cfg, pwhich).to_json());
        };
    });

    // suite run
    auto* suite = app.add_subcommand("suite", "randomized suites");
    suite->require_subcommand(1);
    auto* suite_run = suite->add_subcommand("run", "run suites from a JSON config");
    std::string config_path;
    std::vector<std::string> only;
    Common so;
    suite_run->add_option("--config", config_path, "config file");
    suite_run->add_option("--suite", only, "suite name (repeatable); default: the config's list, else all");
    add_common(suite_run, so, true);
    suite_run->callback([&] {
        action = [&] {
            drc::RunConfig cfg;
            if (!config_path.empty()) cfg = drc::config_from_json(parse_json_arg("@" + config_path, "config"));
            if (!so.params.empty()) cfg.params = make_config(so).params;
            if (suite_run->count("--seed")) cfg.seed = so.seed;
            if (so.trials > 0) cfg.trials = so.trials;
            if (so.prec > 0) cfg.prec = so.prec;
            if (so.tol > 0) cfg.tol = so.tol;
            cfg.validate();
            std::vector<std::string> names = !only.empty() ? only : !cfg.suites.empty() ? cfg.suites : drc::suite_names();
            for (const auto& n : names) {
                const auto all = drc::suite_names();
                if (std::find(all.begin(), all.end(), n) == all.end()) throw drc::UnknownSuite(n);
            }
            Json reports = Json::array();
            bool pass = true;
            for (const auto& n : names) {
                drc::Report r = drc::run_suite(cfg, n);
                pass = pass && r.pass();
                reports.push_back(r.to_json());
            }
            return emit(Json{{"pass", pass}, {"reports", reports}});
        };
    });

    // eval
    auto* ev = app.add_subcommand("eval", "evaluate one case payload (as found in report failures)");
    std::string payload;
    ev->add_option("--payload", payload, "case JSON with a \"kind\" field (or @file)")->required();
    ev->callback([&] { action = [&] { return emit(drc::eval_single(parse_json_arg(payload, "payload"))); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        return action ? action() : kUsage;
    } catch (const drc::SchemaError& e) {
        return emit_error(e.what(), e.path);
    } catch (const std::exception& e) {
        return emit_error(e.what());
    }
}
