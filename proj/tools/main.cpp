#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hydrosleigh/errors.hpp"
#include "hydrosleigh/run.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hydrosleigh::ConfigError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hydrodynamic Chaplygin sleigh simulator"};
    app.require_subcommand(1);

    struct Args {
        std::string config;
        std::string out = ".";
    };

    const std::vector<std::pair<std::string, std::string>> commands{
        {"simulate", "integrate the scenario and write the trajectory CSV and report JSON"},
        {"closed-form", "evaluate the analytic solution on the simulation grid"},
        {"compare", "max deviation between the integrated and analytic trajectories"},
        {"report", "asymptotic quantities (radius, center distance, heading change)"},
        {"measure-check", "invariant-measure criterion for the scenario's constraint"},
    };

    std::vector<Args> args(commands.size());
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        CLI::App* sub = app.add_subcommand(commands[i].first, commands[i].second);
        sub->add_option("--config", args[i].config, "scenario config file")->required();
        sub->add_option("--out", args[i].out, "output directory");
        subs.push_back(sub);
    }

    Args sweep_args;
    std::string sweep_param;
    std::vector<double> sweep_values;
    CLI::App* sweep = app.add_subcommand("sweep", "run one simulation per parameter value");
    sweep->add_option("--config", sweep_args.config, "scenario config file")->required();
    sweep->add_option("--out", sweep_args.out, "output directory");
    sweep->add_option("--param", sweep_param, "field to vary, e.g. fluid.theta")->required();
    sweep->add_option("--values", sweep_values, "values to sweep")->required()->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) {
            const auto cfg = hydrosleigh::parse_config(read_file(sweep_args.config));
            return hydrosleigh::run_sweep(cfg, sweep_param, sweep_values, sweep_args.out);
        }
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (!subs[i]->parsed()) continue;
            const auto cfg = hydrosleigh::parse_config(read_file(args[i].config));
            const auto command = hydrosleigh::parse_command(commands[i].first);
            return hydrosleigh::run(cfg, command, args[i].out);
        }
    } catch (const hydrosleigh::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
