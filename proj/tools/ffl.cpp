// Command-line front end: parses flags and an optional key=value config, runs one
// subcommand and writes its report.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "ffl/commands.hpp"

namespace {

// flag name -> config key
const std::map<std::string, std::string> kFlags = {
    {"--q", "q"},           {"--g", "g"},         {"--x", "x"},           {"--k", "k"},
    {"--mode", "mode"},     {"--n", "n"},         {"--seed", "seed"},     {"--ell", "ell"},
    {"--N", "N"},           {"--kind", "kind"},   {"--D", "D"},           {"--out", "out"},
    {"--format", "format"}, {"--workers", "workers"}, {"--cache-dir", "cache_dir"}, {"--k-max", "k_max"},
    {"--trap-base", "trap_base"}, {"--d-max", "d_max"}, {"--budget", "budget"}, {"--criteria", "criteria"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quadratic function-field L-functions: identities, moments, constants and random-matrix checks"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    app.add_option("--config", config_path, "key=value file; flags override it")->check(CLI::ExistingFile);
    std::map<std::string, std::string> values;
    for (auto& [flag, key] : kFlags) app.add_option(flag, values[flag], "sets '" + key + "'");

    const std::vector<std::pair<std::string, std::string>> subcommands = {
        {"verify", "run the acceptance suite; nonzero exit on any failure"},
        {"lfun", "L-polynomial coefficients and central values"},
        {"zeros", "zeros of the L-polynomials as angles"},
        {"decompose", "L(1/2) against P_X Z_X"},
        {"moments", "moments of L, P_X, Z_X and L/P_X over the family"},
        {"twisted", "twisted first, second and third moments"},
        {"constants", "Euler-product constants with depth and tail bounds"},
        {"rmt", "USp(2N) Monte Carlo of the Hadamard-product observable"},
    };
    for (auto& [name, help] : subcommands) app.add_subcommand(name, help);

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    ffl::RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = ffl::load_config(config_path);
        for (auto& [flag, key] : kFlags)
            if (app.count(flag) > 0) cfg.set(key, values[flag]);
        if (cfg.cache_dir.empty())
            if (const char* env = std::getenv("CACHE_DIR")) cfg.cache_dir = env;
        cfg.validate();
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    for (auto& w : ffl::budget_warnings(cfg, command)) std::cerr << "warning: " << w << "\n";

    try {
        ffl::Table table;
        bool passed = true;
        if (command == "verify") table = ffl::cmd_verify(cfg, passed);
        else if (command == "lfun") table = ffl::cmd_lfun(cfg);
        else if (command == "zeros") table = ffl::cmd_zeros(cfg);
        else if (command == "decompose") table = ffl::cmd_decompose(cfg);
        else if (command == "moments") table = ffl::cmd_moments(cfg);
        else if (command == "twisted") table = ffl::cmd_twisted(cfg);
        else if (command == "constants") table = ffl::cmd_constants(cfg);
        else table = ffl::cmd_rmt(cfg);

        if (cfg.out.empty()) {
            if (cfg.format == "json") ffl::write_json(std::cout, table);
            else ffl::write_csv(std::cout, table);
        } else {
            ffl::write_report(table, cfg.out, cfg.format);
        }
        if (!passed) {
            std::cerr << "verify: some criteria failed\n";
            return 1;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
