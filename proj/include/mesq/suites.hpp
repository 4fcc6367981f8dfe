#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mesq/report.hpp"

namespace mesq {

/// Knobs shared by the verification suites; zero values select per-suite
/// defaults. All suites are deterministic given these parameters.
struct SuiteParams {
    int n = 0;
    int cutoff = 0;
    double tol = 0.0;
    std::uint64_t seed = 1;
};

VerificationReport suite_matrices(const SuiteParams& p);
VerificationReport suite_su11(const SuiteParams& p);
VerificationReport suite_bch(const SuiteParams& p);
VerificationReport suite_eigen(const SuiteParams& p);
VerificationReport suite_entangle(const SuiteParams& p);
VerificationReport suite_squeeze(const SuiteParams& p);
VerificationReport suite_hamiltonian(const SuiteParams& p);
VerificationReport suite_completeness(const SuiteParams& p);
VerificationReport suite_all(const SuiteParams& p);

const std::vector<std::string>& suite_names();
bool is_known_suite(const std::string& name);

/// Dispatch by name; throws std::invalid_argument for unknown suites.
VerificationReport run_suite(const std::string& name, const SuiteParams& p);

}  // namespace mesq
