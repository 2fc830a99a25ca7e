#pragma once

#include "gaugekit/report.hpp"

#include <functional>

namespace gaugekit {

struct RunConfig {
    double h = 1e-4;          // finite-difference step for the residual sweeps
    int n = 256;              // ordered-product resolution
    int cells = 256;          // quadrature cells per axis
    double tol = 0.0;         // > 0 overrides every residual tolerance
    std::uint64_t seed = 42;  // threaded through all randomized sweeps
    double monopole_g = 0.5;
    int scale_sweep = 3;      // holonomy halving levels
    std::string fixture;      // optional cocycle fixture path
};

struct Command {
    std::string name;
    std::string summary;
    std::vector<int> criteria;  // acceptance criteria this command covers
    std::function<Report(const RunConfig &)> run;
};

const std::vector<Command> &commands();
const Command *find_command(const std::string &name);

} // namespace gaugekit
