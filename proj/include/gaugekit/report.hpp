#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gaugekit {

struct CheckRow {
    std::string name;
    double value = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct Report {
    std::string command;
    std::uint64_t seed = 0;
    std::vector<CheckRow> rows;

    /// pass iff value <= tol (the standard residual check)
    void check(const std::string &name, double value, double tol);
    /// pass iff value >= bound (ratios, expected failures)
    void check_at_least(const std::string &name, double value, double bound);
    /// convergence-order measurement: pass iff value >= required - 0.05,
    /// the resolution of a halving fit on an exactly-required-order scheme
    void check_order(const std::string &name, double value, double required);
    void check_flag(const std::string &name, bool ok);

    bool all_pass() const;
    const CheckRow *first_failure() const;

    std::string to_csv() const;   // name,value,tolerance,pass
    std::string to_json() const;
};

} // namespace gaugekit
