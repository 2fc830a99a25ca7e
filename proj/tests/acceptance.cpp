// Acceptance suite: runs every criterion at its stated tolerance and
// prints one pass/fail line per criterion.

#include "gaugekit/runner.hpp"

#include <cstdio>
#include <stdexcept>
#include <set>
#include <string>
#include <vector>

using namespace gaugekit;

namespace {

struct Criterion {
    int id;
    std::string label;
    bool pass = true;
    std::vector<std::string> failures;
};

void fold(Criterion &c, const Report &rep) {
    for (const auto &row : rep.rows)
        if (!row.pass) {
            c.pass = false;
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%s value=%.3e tol=%.3e", row.name.c_str(),
                          row.value, row.tol);
            c.failures.push_back(buf);
        }
}

Report run(const char *name, const RunConfig &cfg) {
    const Command *cmd = find_command(name);
    if (!cmd) throw std::runtime_error(std::string("unknown command ") + name);
    return cmd->run(cfg);
}

} // namespace

int main() {
    RunConfig cfg;  // defaults: h = 1e-4, n = 256, cells = 256, seed = 42
    std::vector<Criterion> crits;

    {
        Criterion c{1, "Clifford core: relations, associativity, dimension, idempotents"};
        fold(c, run("clifford", cfg));
        crits.push_back(c);
    }
    {
        Criterion c{2, "Pin double cover: sign blindness and eta preservation"};
        fold(c, run("double-cover", cfg));
        crits.push_back(c);
    }
    {
        Criterion c{3, "Exterior calculus: d^2/delta^2 orders, double-star sign"};
        fold(c, run("ext-calc", cfg));
        crits.push_back(c);
    }
    {
        Criterion c{4, "Levi-Civita: sphere symbols, torsion, compatibility"};
        fold(c, run("levi-civita", cfg));
        crits.push_back(c);
    }
    {
        Criterion c{5, "Cocycles: double cover, coboundary enumeration, Jacobians"};
        fold(c, run("cocycle", cfg));
        crits.push_back(c);
    }
    {
        Criterion c{6, "Gauge covariance and Bianchi residuals"};
        fold(c, run("gauge", cfg));
        crits.push_back(c);
    }
    {
        Criterion c{7, "Transport: RK4/Picard agreement, composition, holonomy"};
        fold(c, run("transport", cfg));
        fold(c, run("holonomy", cfg));
        crits.push_back(c);
    }
    {
        Criterion c{8, "Maxwell residuals and monopole quantization/flux"};
        fold(c, run("maxwell", cfg));
        for (double g : {0.5, 1.0, 1.5}) {
            RunConfig mc = cfg;
            mc.monopole_g = g;
            fold(c, run("monopole", mc));
        }
        RunConfig bad = cfg;
        bad.monopole_g = 0.3;  // 2g = 0.6: documented quantization failure
        fold(c, run("monopole", bad));
        crits.push_back(c);
    }
    {
        Criterion c{9, "Dirac: D^2 order, helicity exchange, free plane wave"};
        fold(c, run("dirac", cfg));
        crits.push_back(c);
    }
    {
        Criterion c{10, "Seiberg-Witten sigma properties and zero-data residuals"};
        fold(c, run("sw", cfg));
        crits.push_back(c);
    }
    {
        Criterion c{11, "CLI coverage and byte-identical reports"};
        std::set<int> covered;
        for (const auto &cmd : commands())
            for (int id : cmd.criteria) covered.insert(id);
        for (int id = 1; id <= 10; ++id)
            if (!covered.count(id)) {
                c.pass = false;
                c.failures.push_back("criterion " + std::to_string(id) +
                                     " has no command");
            }
        const Report r1 = run("double-cover", cfg);
        const Report r2 = run("double-cover", cfg);
        if (r1.to_csv() != r2.to_csv()) {
            c.pass = false;
            c.failures.push_back("CSV not byte-identical for identical seed");
        }
        crits.push_back(c);
    }

    int failed = 0;
    for (const auto &c : crits) {
        std::printf("criterion %2d: %s  [%s]\n", c.id, c.pass ? "PASS" : "FAIL",
                    c.label.c_str());
        for (const auto &f : c.failures) std::printf("              - %s\n", f.c_str());
        if (!c.pass) ++failed;
    }
    if (failed) std::printf("%d criterion(s) failed\n", failed);
    return failed == 0 ? 0 : 1;
}
