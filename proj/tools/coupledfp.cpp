// coupledfp: coupled fixed points of response-map pairs.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "coupled/cli/runner.hpp"
#include "coupled/cli/tables.hpp"
#include "coupled/errors.hpp"

namespace cli = coupled::cli;

int main(int argc, char** argv) {
    CLI::App app{"Coupled fixed points of response-map pairs"};
    app.require_subcommand(1);

    std::optional<std::filesystem::path> out;
    std::optional<std::uint64_t> seed;
    app.add_option("--out", out, "Output directory (overrides the config)");
    app.add_option("--seed", seed, "Sampler seed (overrides the config)");

    std::filesystem::path config;
    auto* solve = app.add_subcommand("solve", "Solve from every start in the config");
    solve->add_option("config", config, "Experiment config (JSON)")->required();
    auto* certify = app.add_subcommand("certify", "Sample the contraction inequality");
    certify->add_option("config", config, "Experiment config (JSON)")->required();
    auto* run = app.add_subcommand("run", "Run the config's command list");
    run->add_option("config", config, "Experiment config (JSON)")->required();

    std::string table;
    auto* tab = app.add_subcommand("table", "Reproduce an iteration table as CSV");
    tab->add_option("name", table, "table1, table2 or table3")->required();

    for (auto* sub : {solve, certify, run, tab}) {
        sub->add_option("--out", out, "Output directory (overrides the config)");
        sub->add_option("--seed", seed, "Sampler seed (overrides the config)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::exit_code::ok : cli::exit_code::config;
    }

    if (tab->parsed()) {
        try {
            const std::string csv = cli::reproduce_table(table);
            if (!out) {
                std::cout << csv;
                return cli::exit_code::ok;
            }
            std::filesystem::create_directories(*out);
            const auto path = *out / (table + ".csv");
            std::ofstream f(path, std::ios::binary | std::ios::trunc);
            f << csv;
            if (!f) {
                std::cerr << "error: cannot write " << path.string() << '\n';
                return cli::exit_code::failure;
            }
            std::cerr << "wrote " << path.string() << '\n';
            return cli::exit_code::ok;
        } catch (const coupled::ConfigurationError& e) {
            std::cerr << "configuration error: " << e.what() << '\n';
            return cli::exit_code::config;
        }
    }

    cli::RunOptions opts;
    opts.out = out;
    opts.seed = seed;
    if (solve->parsed()) opts.commands = std::vector<cli::Command>{{cli::CommandKind::Solve, {}}};
    if (certify->parsed()) opts.commands = std::vector<cli::Command>{{cli::CommandKind::Certify, {}}};
    return cli::run_file(config, opts, std::cerr, std::cerr);
}
