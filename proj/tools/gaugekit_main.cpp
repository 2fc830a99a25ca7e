#include "gaugekit/runner.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

int write_report(const gaugekit::Report &rep, const std::string &out,
                 const std::string &format) {
    std::string dir = out;
    if (dir.empty()) {
        const char *env = std::getenv("GAUGEKIT_OUT_DIR");
        dir = env ? env : ".";
    }
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const std::string path = dir + "/" + rep.command + "." + format;
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::fprintf(stderr, "cannot write %s\n", path.c_str());
        return 1;
    }
    f << (format == "json" ? rep.to_json() : rep.to_csv());
    std::printf("report: %s\n", path.c_str());
    return 0;
}

void print_rows(const gaugekit::Report &rep) {
    for (const auto &r : rep.rows)
        std::printf("  %-48s %14.6e  (tol %10.3e)  %s\n", r.name.c_str(), r.value, r.tol,
                    r.pass ? "pass" : "FAIL");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"gaugekit: gauge-theory identity checks, residual sweeps, and "
                 "convergence tables"};
    app.set_help_flag("--help", "print usage");
    app.require_subcommand(0, 1);

    gaugekit::RunConfig cfg;
    std::string out;
    std::string format = "csv";
    bool run_all = false;

    app.add_option("--h", cfg.h, "finite-difference step")->check(CLI::PositiveNumber);
    app.add_option("--n", cfg.n, "ordered-product resolution")->check(CLI::PositiveNumber);
    app.add_option("--cells", cfg.cells, "quadrature cells per axis")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol", cfg.tol, "override every residual tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "seed for the randomized sweeps");
    app.add_option("--g", cfg.monopole_g, "monopole charge");
    app.add_option("--scale-sweep", cfg.scale_sweep, "holonomy halving levels")
        ->check(CLI::PositiveNumber);
    app.add_option("--fixture", cfg.fixture, "cocycle fixture file (json)");
    app.add_option("--out", out, "output directory (default $GAUGEKIT_OUT_DIR or .)");
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--all", run_all, "run every command");

    for (const auto &cmd : gaugekit::commands())
        app.add_subcommand(cmd.name, cmd.summary)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    std::vector<const gaugekit::Command *> to_run;
    if (run_all) {
        for (const auto &cmd : gaugekit::commands())
            if (cmd.name != "bianchi") to_run.push_back(&cmd);  // alias of gauge
    } else {
        for (const auto &cmd : gaugekit::commands())
            if (app.got_subcommand(cmd.name)) to_run.push_back(&cmd);
    }
    if (to_run.empty()) {
        std::fprintf(stderr, "no command given; known commands:\n");
        for (const auto &cmd : gaugekit::commands())
            std::fprintf(stderr, "  %-14s %s\n", cmd.name.c_str(), cmd.summary.c_str());
        return 2;
    }

    bool all_pass = true;
    std::string first_fail;
    for (const auto *cmd : to_run) {
        gaugekit::Report rep;
        try {
            rep = cmd->run(cfg);
        } catch (const std::exception &e) {
            std::fprintf(stderr, "%s: %s\n", cmd->name.c_str(), e.what());
            return 2;
        }
        std::printf("%s:\n", cmd->name.c_str());
        print_rows(rep);
        if (write_report(rep, out, format) != 0) return 1;
        if (!rep.all_pass()) {
            all_pass = false;
            if (first_fail.empty()) first_fail = rep.first_failure()->name;
        }
    }
    if (!all_pass) {
        std::fprintf(stderr, "failing check: %s\n", first_fail.c_str());
        return 1;
    }
    return 0;
}
