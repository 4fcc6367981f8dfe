#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mesq {

/// One verified identity: pass iff value <= tolerance. `provenance` names the
/// identity being checked, e.g. "F*Finv = I" or "[K-,K+] = 2K0 (G)".
struct CheckResult {
    std::string name;
    double value;
    double tolerance;
    bool pass;
    std::string provenance;
};

struct VerificationReport {
    std::string suite;
    int n = 0;
    int cutoff = 0;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    std::int64_t wall_time_ms = 0;

    bool all_pass() const;
    void add(const std::string& name, double value, double tolerance,
             const std::string& provenance);
    /// For findings that are recorded rather than bounded (tolerance-free).
    void note(const std::string& name, double value, const std::string& provenance);
};

/// Serialization is deterministic: identical inputs produce byte-identical
/// JSON apart from the wall_time_ms field. Schema version "mesq-report/1".
std::string report_to_json(const VerificationReport& report);
void write_report(const VerificationReport& report, const std::string& path);

struct SweepRow {
    double param_value;
    std::vector<double> observables;
};

struct SweepTable {
    std::string parameter;
    std::vector<std::string> observable_names;
    std::vector<SweepRow> rows;  // ascending in param_value, no duplicates

    void validate() const;
};

/// Least-squares slope of log|y| against x over rows with y > 0.
double fitted_log_slope(const SweepTable& table, int observable_index);

/// CSV with a header row, fixed column order, 17 significant digits, and a
/// footer comment line carrying the fitted log-slopes.
std::string sweep_to_csv(const SweepTable& table);
void write_sweep(const SweepTable& table, const std::string& path);

/// Deterministic 64-bit generator (splitmix64) used wherever seeded
/// randomness is called for; identical across platforms.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    /// Uniform in [0, 1).
    double next_double();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);

private:
    std::uint64_t state_;
};

}  // namespace mesq
