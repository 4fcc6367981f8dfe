#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mesq/dynamics.hpp"
#include "mesq/gaussian.hpp"
#include "mesq/report.hpp"
#include "mesq/states.hpp"
#include "mesq/suites.hpp"

namespace {

using mesq::RVector;

constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

/// Plain-text key=value configuration; '#' starts a comment. Command-line
/// flags override file values.
std::map<std::string, std::string> load_config(const std::string& path) {
    std::map<std::string, std::string> kv;
    if (path.empty()) return kv;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = value;
    }
    return kv;
}

struct ConfigOverlay {
    const CLI::App* cmd;
    std::map<std::string, std::string> kv;

    bool given(const std::string& flag) const { return cmd->count("--" + flag) > 0; }

    void fill(const std::string& key, int& target) const {
        if (!given(key) && kv.count(key)) target = std::stoi(kv.at(key));
    }
    void fill(const std::string& key, double& target) const {
        if (!given(key) && kv.count(key)) target = std::stod(kv.at(key));
    }
    void fill(const std::string& key, std::uint64_t& target) const {
        if (!given(key) && kv.count(key)) target = std::stoull(kv.at(key));
    }
    void fill(const std::string& key, std::string& target) const {
        if (!given(key) && kv.count(key)) target = kv.at(key);
    }
};

std::vector<std::string> split_csv_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

RVector parse_label_values(const std::string& s, int expected) {
    const auto parts = split_csv_list(s);
    if (static_cast<int>(parts.size()) != expected)
        throw std::invalid_argument("label needs " + std::to_string(expected) +
                                    " comma-separated values");
    RVector v(expected);
    for (int i = 0; i < expected; ++i) v(i) = std::stod(parts[i]);
    return v;
}

bool suite_uses_fock(const std::string& suite) {
    return suite != "matrices";
}

void enforce_envelope(const std::string& suite, int n, int cutoff) {
    if (n != 0 && (n < 2 || n > 8))
        throw std::out_of_range("n must lie in 2..8");
    if (suite_uses_fock(suite)) {
        if (n > 4) throw std::out_of_range("Fock-engine suites support n <= 4");
        if (n > 0 && cutoff > 0 && std::pow(static_cast<double>(cutoff), n) > 20000.0)
            throw std::out_of_range("cutoff^n exceeds the 20000-dimension envelope");
    }
}

int run_verify(const CLI::App* cmd, std::string config_path, std::string suite, int n,
               int cutoff, double tol, std::uint64_t seed, std::string json_path) {
    const ConfigOverlay cfg{cmd, load_config(config_path)};
    cfg.fill("suite", suite);
    cfg.fill("n", n);
    cfg.fill("cutoff", cutoff);
    cfg.fill("tol", tol);
    cfg.fill("seed", seed);
    cfg.fill("json", json_path);

    if (!mesq::is_known_suite(suite)) {
        std::cerr << "unknown suite: " << suite << "\n";
        return kExitUsage;
    }
    enforce_envelope(suite, n, cutoff);

    mesq::SuiteParams params;
    params.n = n;
    params.cutoff = cutoff;
    params.tol = tol;
    params.seed = seed;
    const mesq::VerificationReport report = mesq::run_suite(suite, params);
    if (!json_path.empty()) mesq::write_report(report, json_path);
    for (const auto& c : report.checks)
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  value=" << c.value
                  << "  tol=" << c.tolerance << "  (" << c.provenance << ")\n";
    std::cout << "suite " << suite << ": " << (report.all_pass() ? "PASS" : "FAIL") << " ("
              << report.checks.size() << " checks, " << report.wall_time_ms << " ms)\n";
    return report.all_pass() ? 0 : kExitCheckFailure;
}

using ObservableFn = std::function<double(double)>;

std::map<std::string, ObservableFn> observable_registry(const std::string& param, int n,
                                                        double beta_chi) {
    using namespace mesq;
    std::map<std::string, ObservableFn> reg;
    if (param == "lambda") {
        auto stats = [n](double l) { return squeezed_vacuum_stats(n, l); };
        reg["var_collective_X"] = [stats](double l) { return stats(l).var_collective_X; };
        reg["var_collective_Y"] = [stats](double l) { return stats(l).var_collective_Y; };
        reg["uncertainty_product"] = [stats](double l) { return stats(l).uncertainty_product; };
        reg["var_total_X"] = [stats](double l) { return stats(l).var_total_X; };
        reg["var_rel_P2"] = [stats](double l) { return stats(l).var_relative_P; };
    } else if (param == "r") {
        reg["var_total_P"] = [n](double r) {
            return quad_variance(generate_epr(n, r, EprVariant::PChiZero), direction_total_P(n));
        };
        reg["var_Q2"] = [n](double r) {
            return quad_variance(generate_epr(n, r, EprVariant::PChiZero),
                                 direction_relative_X(n, 2));
        };
        reg["var_total_X"] = [n](double r) {
            return quad_variance(generate_epr(n, r, EprVariant::ChiPZero), direction_total_X(n));
        };
        reg["var_rel_P2"] = [n](double r) {
            return quad_variance(generate_epr(n, r, EprVariant::ChiPZero),
                                 direction_relative_P(n, 2));
        };
        if (n == 2) {
            reg["overlap_width"] = [](double r) {
                const StateLabel base = StateLabel::zero(LabelVariant::PChi, 2);
                const StateLabel shifted(LabelVariant::PChi, 0.0, RVector::Constant(1, 0.3));
                const double f = overlap(regularized_entangled_state(2, base, r).gaussian,
                                         regularized_entangled_state(2, shifted, r).gaussian);
                return 0.3 / std::sqrt(-2.0 * std::log(f));
            };
        }
    } else if (param == "t") {
        reg["scale_sumP"] = [n, beta_chi](double t) {
            const auto rates =
                heisenberg_rates(pfister_hamiltonian(n, beta_chi), PumpSpec(beta_chi, t));
            return rates.entries.at(0).factor;
        };
        reg["scale_relX2"] = [n, beta_chi](double t) {
            const auto rates =
                heisenberg_rates(pfister_hamiltonian(n, beta_chi), PumpSpec(beta_chi, t));
            return rates.entries.at(1).factor;
        };
        reg["var_total_P"] = [n, beta_chi](double t) {
            const auto map = symplectic_of_generator(pfister_hamiltonian(n, beta_chi), t);
            return quad_variance(apply_map(vacuum_state(n), map), direction_total_P(n));
        };
    }
    return reg;
}

int run_sweep(const CLI::App* cmd, std::string config_path, std::string param, double from,
              double to, int steps, std::string observables, int n, double beta_chi,
              std::string csv_path) {
    const ConfigOverlay cfg{cmd, load_config(config_path)};
    cfg.fill("param", param);
    cfg.fill("from", from);
    cfg.fill("to", to);
    cfg.fill("steps", steps);
    cfg.fill("observables", observables);
    cfg.fill("n", n);
    cfg.fill("betachi", beta_chi);
    cfg.fill("csv", csv_path);

    if (param != "lambda" && param != "r" && param != "t") {
        std::cerr << "unknown sweep parameter: " << param << "\n";
        return kExitUsage;
    }
    if (!(from < to) || steps < 2) {
        std::cerr << "sweep needs from < to and steps >= 2\n";
        return kExitUsage;
    }
    if (n < 2 || n > 8) throw std::out_of_range("sweeps support n in 2..8");
    if (param == "r" && from < 0.0) throw std::out_of_range("r sweeps need from >= 0");
    if (param == "t" && from < 0.0) throw std::out_of_range("t sweeps need from >= 0");

    const auto registry = observable_registry(param, n, beta_chi);
    std::vector<std::string> names = split_csv_list(observables);
    if (names.empty())
        for (const auto& [name, fn] : registry) names.push_back(name);
    for (const auto& name : names) {
        if (!registry.count(name)) {
            std::cerr << "unknown observable for param " << param << ": " << name << "\n";
            return kExitUsage;
        }
    }

    mesq::SweepTable table;
    table.parameter = param;
    table.observable_names = names;
    for (int i = 0; i < steps; ++i) {
        mesq::SweepRow row;
        row.param_value = from + (to - from) * i / (steps - 1);
        for (const auto& name : names)
            row.observables.push_back(registry.at(name)(row.param_value));
        table.rows.push_back(std::move(row));
    }
    if (!csv_path.empty()) mesq::write_sweep(table, csv_path);
    else std::cout << mesq::sweep_to_csv(table);
    return 0;
}

int run_state(const CLI::App* cmd, std::string config_path, int n, std::string variant_name,
              std::string label_str, int cutoff, double r, bool r_given,
              std::string json_path) {
    const ConfigOverlay cfg{cmd, load_config(config_path)};
    cfg.fill("n", n);
    cfg.fill("variant", variant_name);
    cfg.fill("label", label_str);
    cfg.fill("cutoff", cutoff);
    cfg.fill("json", json_path);
    if (!r_given && cfg.kv.count("r")) {
        r = std::stod(cfg.kv.at("r"));
        r_given = true;
    }

    if (n < 2 || n > 4) throw std::out_of_range("state dumps support n in 2..4");
    mesq::LabelVariant variant;
    if (variant_name == "pchi") variant = mesq::LabelVariant::PChi;
    else if (variant_name == "chip") variant = mesq::LabelVariant::ChiP;
    else {
        std::cerr << "unknown variant: " << variant_name << " (expected pchi or chip)\n";
        return kExitUsage;
    }
    RVector values;
    try {
        values = parse_label_values(label_str, n);
    } catch (const std::exception& e) {
        std::cerr << "invalid label: " << e.what() << "\n";
        return kExitUsage;
    }
    const mesq::StateLabel label(variant, values(0), RVector(values.tail(n - 1)));

    nlohmann::ordered_json j;
    j["schema"] = "mesq-state/1";
    j["n"] = n;
    j["variant"] = variant_name;
    j["label"] = {{"scalar", label.scalar}, {"rest", std::vector<double>(
                                                         label.rest.data(),
                                                         label.rest.data() + label.rest.size())}};
    if (r_given) {
        if (r < 0.0) throw std::out_of_range("r must be >= 0");
        const mesq::RegularizedState state = mesq::regularized_entangled_state(n, label, r);
        j["kind"] = "gaussian-regularized";
        j["r"] = r;
        j["mean"] = std::vector<double>(state.gaussian.mean.data(),
                                        state.gaussian.mean.data() + 2 * n);
        auto cov = nlohmann::ordered_json::array();
        for (int i = 0; i < 2 * n; ++i) {
            auto row = nlohmann::ordered_json::array();
            for (int k = 0; k < 2 * n; ++k) row.push_back(state.gaussian.cov(i, k));
            cov.push_back(std::move(row));
        }
        j["cov"] = std::move(cov);
    } else {
        if (cutoff < 2) {
            std::cerr << "ideal state dumps need --cutoff >= 2 (or pass --r)\n";
            return kExitUsage;
        }
        if (std::pow(static_cast<double>(cutoff), n) > 20000.0)
            throw std::out_of_range("cutoff^n exceeds the 20000-dimension envelope");
        const mesq::FockSpace space(n, cutoff);
        const mesq::FockVector v = mesq::ideal_entangled_vector(space, label);
        j["kind"] = "fock-ideal";
        j["cutoff"] = cutoff;
        j["norm_prefactor"] = mesq::ideal_norm_prefactor(n);
        auto coeffs = nlohmann::ordered_json::array();
        for (long idx = 0; idx < space.dimension(); ++idx) {
            auto occ = nlohmann::ordered_json::array();
            for (int m = 1; m <= n; ++m) occ.push_back(space.occupation(idx, m));
            coeffs.push_back({{"index", idx},
                              {"occupation", std::move(occ)},
                              {"re", v.coeffs(idx).real()},
                              {"im", v.coeffs(idx).imag()}});
        }
        j["coefficients"] = std::move(coeffs);
    }

    const std::string text = j.dump(2) + "\n";
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) throw std::runtime_error("cannot open " + json_path);
        out << text;
    } else {
        std::cout << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mesq: dual-engine verification of n-mode entangled states, "
                 "their squeezing transformations, and generating Hamiltonians"};
    app.require_subcommand(1);
    int exit_code = 0;

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string v_suite = "all", v_json, v_config;
    int v_n = 0, v_cutoff = 0;
    double v_tol = 0.0;
    std::uint64_t v_seed = 1;
    verify->add_option("--suite", v_suite, "matrices|su11|bch|eigen|entangle|squeeze|hamiltonian|completeness|all");
    verify->add_option("--n", v_n, "mode count (0 = per-suite defaults)");
    verify->add_option("--cutoff", v_cutoff, "Fock cutoff per mode (0 = per-suite defaults)");
    verify->add_option("--tol", v_tol, "override the main tolerance");
    verify->add_option("--seed", v_seed, "seed for randomized checks");
    verify->add_option("--json", v_json, "write the JSON report here");
    verify->add_option("--config", v_config, "key=value config file (flags win)");
    verify->callback([&] {
        exit_code = run_verify(verify, v_config, v_suite, v_n, v_cutoff, v_tol, v_seed, v_json);
    });

    // sweep / evolve
    std::string s_param = "lambda", s_obs, s_csv, s_config;
    double s_from = 0.0, s_to = 1.0, s_bc = 1.0;
    int s_steps = 21, s_n = 2;
    auto add_sweep_options = [&](CLI::App* cmd, bool with_param) {
        if (with_param) cmd->add_option("--param", s_param, "lambda|r|t");
        cmd->add_option("--from", s_from, "grid start");
        cmd->add_option("--to", s_to, "grid end");
        cmd->add_option("--steps", s_steps, "grid points (>= 2)");
        cmd->add_option("--observables", s_obs, "comma-separated observable names");
        cmd->add_option("--n", s_n, "mode count");
        cmd->add_option("--betachi", s_bc, "pump coupling for t sweeps");
        cmd->add_option("--csv", s_csv, "write the CSV table here");
        cmd->add_option("--config", s_config, "key=value config file (flags win)");
    };
    auto* sweep = app.add_subcommand("sweep", "evaluate observables over a parameter grid");
    add_sweep_options(sweep, true);
    sweep->callback([&] {
        exit_code = run_sweep(sweep, s_config, s_param, s_from, s_to, s_steps, s_obs, s_n,
                              s_bc, s_csv);
    });
    auto* evolve = app.add_subcommand("evolve", "time sweep of the pump dynamics");
    add_sweep_options(evolve, false);
    evolve->callback([&] {
        exit_code = run_sweep(evolve, s_config, "t", s_from, s_to, s_steps, s_obs, s_n, s_bc,
                              s_csv);
    });

    // state
    auto* state = app.add_subcommand("state", "dump an entangled state");
    std::string st_variant = "pchi", st_label = "0,0", st_json, st_config;
    int st_n = 2, st_cutoff = 0;
    double st_r = 0.0;
    state->add_option("--n", st_n, "mode count");
    state->add_option("--variant", st_variant, "pchi|chip");
    state->add_option("--label", st_label, "comma-separated eigenvalues (scalar first)");
    state->add_option("--cutoff", st_cutoff, "Fock cutoff for the ideal dump");
    auto* r_opt = state->add_option("--r", st_r, "squeezing of the regularized Gaussian dump");
    state->add_option("--json", st_json, "write the JSON dump here");
    state->add_option("--config", st_config, "key=value config file (flags win)");
    state->callback([&] {
        exit_code = run_state(state, st_config, st_n, st_variant, st_label, st_cutoff, st_r,
                              r_opt->count() > 0, st_json);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "range error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return exit_code;
}
