// gevrey-lab: config-driven runner for the dissipative-equation laboratory.
//   run   <config.ini>                      one experiment, CSV + JSON outputs
//   sweep <config.ini> --param s.k --values a,b,c
//   check <suite|all>                       built-in verification suites

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gevlab/gevlab.hpp"

namespace {

int cmd_run(const std::string& config_path) {
    try {
        const gevlab::RunResult r = gevlab::run_experiment_file(config_path);
        std::cout << r.summary.dump(2) << "\n";
        return r.exit_code;
    } catch (const gevlab::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::string& values_csv, const std::string& out_path) {
    try {
        std::vector<std::string> values;
        std::istringstream in(values_csv);
        std::string tok;
        while (std::getline(in, tok, ','))
            if (!tok.empty()) values.push_back(tok);
        const gevlab::IniFile base = gevlab::IniFile::parse_file(config_path);
        const gevlab::json agg = gevlab::sweep_experiment(base, param, values);
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            if (!out) {
                std::cerr << "config error: cannot open sweep output " << out_path << "\n";
                return 1;
            }
            out << agg.dump(2) << "\n";
        }
        std::cout << agg.dump(2) << "\n";
        return 0;
    } catch (const gevlab::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_check(const std::string& suite) {
    std::vector<std::string> names;
    if (suite == "all") names = gevlab::available_suites();
    else names.push_back(suite);
    bool all_pass = true;
    try {
        for (const auto& n : names) {
            const gevlab::SuiteResult r = gevlab::run_suite(n);
            all_pass = gevlab::print_suite(r, std::cout) && all_pass;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "; available:";
        for (const auto& n : gevlab::available_suites()) std::cerr << " " << n;
        std::cerr << "\n";
        return 1;
    }
    std::cout << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral laboratory for dissipative equations"};
    app.require_subcommand(1);

    std::string config_path, param, values, sweep_out, suite;

    auto* run = app.add_subcommand("run", "run one experiment from a config file");
    run->add_option("config", config_path, "INI config")->required();

    auto* sweep = app.add_subcommand("sweep", "run one experiment per parameter value");
    sweep->add_option("config", config_path, "INI config")->required();
    sweep->add_option("--param", param, "parameter as section.key")->required();
    sweep->add_option("--values", values, "comma-separated values")->required();
    sweep->add_option("--out", sweep_out, "aggregated JSON path");

    auto* check = app.add_subcommand("check", "run a built-in verification suite");
    check->add_option("suite", suite, "suite name or 'all'")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(config_path);
    if (sweep->parsed()) return cmd_sweep(config_path, param, values, sweep_out);
    return cmd_check(suite);
}
