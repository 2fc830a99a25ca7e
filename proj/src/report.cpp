#include "gaugekit/report.hpp"

#include <cstdio>

namespace gaugekit {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

} // namespace

void Report::check(const std::string &name, double value, double tol) {
    rows.push_back({name, value, tol, value <= tol});
}

void Report::check_at_least(const std::string &name, double value, double bound) {
    rows.push_back({name, value, bound, value >= bound});
}

void Report::check_order(const std::string &name, double value, double required) {
    rows.push_back({name, value, required, value >= required - 0.05});
}

void Report::check_flag(const std::string &name, bool ok) {
    rows.push_back({name, ok ? 1.0 : 0.0, 1.0, ok});
}

bool Report::all_pass() const {
    for (const auto &r : rows)
        if (!r.pass) return false;
    return true;
}

const CheckRow *Report::first_failure() const {
    for (const auto &r : rows)
        if (!r.pass) return &r;
    return nullptr;
}

std::string Report::to_csv() const {
    std::string out = "name,value,tolerance,pass\n";
    for (const auto &r : rows) {
        out += r.name;
        out += ',';
        out += fmt_double(r.value);
        out += ',';
        out += fmt_double(r.tol);
        out += ',';
        out += r.pass ? "1" : "0";
        out += '\n';
    }
    return out;
}

std::string Report::to_json() const {
    std::string out = "{\n  \"command\": \"" + command + "\",\n  \"seed\": " +
                      std::to_string(seed) + ",\n  \"rows\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto &r = rows[i];
        out += "    {\"name\": \"" + r.name + "\", \"value\": " + fmt_double(r.value) +
               ", \"tolerance\": " + fmt_double(r.tol) +
               ", \"pass\": " + (r.pass ? "true" : "false") + "}";
        out += (i + 1 < rows.size()) ? ",\n" : "\n";
    }
    out += "  ],\n  \"all_pass\": ";
    out += all_pass() ? "true" : "false";
    out += "\n}\n";
    return out;
}

} // namespace gaugekit
