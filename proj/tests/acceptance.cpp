// Acceptance run: one line per criterion, exit status 1 if any criterion fails.
// Usage: acceptance [seed]

#include "drc/suite.hpp"

#include <cstdio>
#include <cstdlib>

namespace {

struct Criterion {
    int id;
    const char* suite;
    const char* what;
    double budget_s;
};

const Criterion kCriteria[] = {
    {1, "integrality", "DR values are integers", 30},
    {2, "words", "word independence and cocycle law", 30},
    {3, "torsion", "S and ST torsion relations", 10},
    {4, "psi-integrality", "12 Psi^delta is integral", 10},
    {5, "comparison", "DR^delta / DD comparison", 60},
    {6, "distribution", "distribution relations", 10},
    {7, "qseries", "q-series decompositions", 120},
    {8, "periods", "analytic period identities", 60},
    {9, "normal-forms", "data-model normal forms", 20},
};

}  // namespace

int main(int argc, char** argv) {
    drc::RunConfig cfg;
    if (argc > 1) cfg.seed = std::strtoull(argv[1], nullptr, 10);
    bool all = true;
    for (const auto& c : kCriteria) {
        drc::Report r = drc::run_suite(cfg, c.suite);
        bool in_time = r.wall_time < c.budget_s;
        bool ok = r.pass() && in_time && r.checks > 0;
        all = all && ok;
        std::printf("criterion %d: %s  %-16s %-36s checks=%ld failures=%zu time=%.2fs/%.0fs", c.id, ok ? "PASS" : "FAIL",
                    c.suite, c.what, r.checks, r.failures.size(), r.wall_time, c.budget_s);
        if (r.max_residual) std::printf(" max_residual=%.3g", *r.max_residual);
        std::printf("\n");
        for (const auto& f : r.failures) std::printf("  trial %ld: %s\n", f.trial, f.result.dump().c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
