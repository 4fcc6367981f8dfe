#include "mesq/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace mesq {

namespace {

std::string format_17g(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

bool VerificationReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void VerificationReport::add(const std::string& name, double value, double tolerance,
                             const std::string& provenance) {
    checks.push_back({name, value, tolerance, value <= tolerance, provenance});
}

void VerificationReport::note(const std::string& name, double value,
                              const std::string& provenance) {
    checks.push_back({name, value, std::numeric_limits<double>::max(), true, provenance});
}

std::string report_to_json(const VerificationReport& report) {
    nlohmann::ordered_json j;
    j["schema"] = "mesq-report/1";
    j["suite"] = report.suite;
    j["n"] = report.n;
    j["cutoff"] = report.cutoff;
    j["seed"] = report.seed;
    j["pass"] = report.all_pass();
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["value"] = c.value;
        jc["tolerance"] = c.tolerance;
        jc["pass"] = c.pass;
        jc["provenance"] = c.provenance;
        j["checks"].push_back(std::move(jc));
    }
    j["wall_time_ms"] = report.wall_time_ms;
    return j.dump(2) + "\n";
}

void write_report(const VerificationReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_report: cannot open " + path);
    out << report_to_json(report);
}

void SweepTable::validate() const {
    for (const auto& row : rows)
        if (row.observables.size() != observable_names.size())
            throw std::invalid_argument("SweepTable: ragged rows");
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i - 1].param_value < rows[i].param_value))
            throw std::invalid_argument("SweepTable: rows must ascend without duplicates");
}

double fitted_log_slope(const SweepTable& table, int observable_index) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& row : table.rows) {
        const double y = row.observables[observable_index];
        if (y <= 0.0) continue;
        const double ly = std::log(y);
        sx += row.param_value;
        sy += ly;
        sxx += row.param_value * row.param_value;
        sxy += row.param_value * ly;
        ++m;
    }
    if (m < 2) return std::numeric_limits<double>::quiet_NaN();
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::string sweep_to_csv(const SweepTable& table) {
    table.validate();
    std::string out = table.parameter;
    for (const auto& name : table.observable_names) out += "," + name;
    out += "\n";
    for (const auto& row : table.rows) {
        out += format_17g(row.param_value);
        for (double v : row.observables) out += "," + format_17g(v);
        out += "\n";
    }
    out += "# logslope";
    for (std::size_t i = 0; i < table.observable_names.size(); ++i)
        out += " " + table.observable_names[i] + "=" +
               format_17g(fitted_log_slope(table, static_cast<int>(i)));
    out += "\n";
    return out;
}

void write_sweep(const SweepTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_sweep: cannot open " + path);
    out << sweep_to_csv(table);
}

std::uint64_t SeededRng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SeededRng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
}

}  // namespace mesq
