#include "commands.hpp"
#include "config.hpp"

#include <symtomo/types.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <optional>
#include <string>

namespace {

using namespace symtomo;
using namespace symtomo::cli;

int dispatch(CLI::App& app, int argc, char** argv) {
    app.require_subcommand(1);

    auto* dims = app.add_subcommand("dims", "Subspace dimension table per qubit count");
    DimsArgs dims_args;
    std::string dims_qubits = "2..5";
    std::string dims_out;
    dims->add_option("--symmetry", dims_args.symmetry, "Catalog name or spec JSON path");
    dims->add_option("--qubits", dims_qubits, "Qubit count or range, e.g. 3 or 2..5");
    dims->add_option("--out", dims_out, "Directory for dims.csv");

    Overrides overrides;
    std::string config_path;
    std::string flag_symmetry, flag_qubits, flag_out;
    std::uint64_t flag_seed = 0;
    const auto add_common = [&](CLI::App* cmd, bool seed_required) {
        cmd->add_option("--config", config_path, "Run config JSON")->required();
        cmd->add_option("--symmetry", flag_symmetry, "Override config symmetry");
        cmd->add_option("--qubits", flag_qubits, "Override config qubit count");
        auto* seed_opt = cmd->add_option("--seed", flag_seed, "Master seed");
        if (seed_required) seed_opt->required();
        cmd->add_option("--out", flag_out, "Override output directory");
    };
    auto* estimate = app.add_subcommand("estimate", "One simulate->estimate pipeline");
    add_common(estimate, false);
    auto* simulate = app.add_subcommand("simulate", "Write a simulated measurement record");
    add_common(simulate, false);
    auto* benchmark = app.add_subcommand("benchmark", "Sweep repetitions into CSV rows");
    add_common(benchmark, true);

    auto* project = app.add_subcommand("project", "Symmetric part of a density matrix");
    ProjectArgs project_args;
    std::string project_qubits;
    project->add_option("--state", project_args.state_path, "Density matrix JSON")->required();
    project->add_option("--symmetry", project_args.symmetry, "Catalog name or spec JSON path")
        ->required();
    project->add_option("--qubits", project_qubits, "Qubit count")->required();
    project->add_option("--out", project_args.out, "Output directory");

    app.parse(argc, argv);

    const auto collect_overrides = [&](const CLI::App* cmd) {
        if (cmd->count("--symmetry") > 0) overrides.symmetry = flag_symmetry;
        if (cmd->count("--qubits") > 0) {
            const auto range = parse_qubit_range(flag_qubits);
            if (range.size() != 1) {
                throw ConfigError("this command takes a single qubit count, not a range");
            }
            overrides.n_qubits = range.front();
        }
        if (cmd->count("--seed") > 0) overrides.seed = flag_seed;
        if (cmd->count("--out") > 0) overrides.out = flag_out;
    };

    if (dims->parsed()) {
        dims_args.qubits = parse_qubit_range(dims_qubits);
        if (dims->count("--out") > 0) dims_args.out = dims_out;
        cmd_dims(dims_args);
    } else if (estimate->parsed()) {
        collect_overrides(estimate);
        cmd_estimate(load_config(config_path, overrides));
    } else if (simulate->parsed()) {
        collect_overrides(simulate);
        cmd_simulate(load_config(config_path, overrides));
    } else if (benchmark->parsed()) {
        collect_overrides(benchmark);
        cmd_benchmark(load_config(config_path, overrides));
    } else if (project->parsed()) {
        const auto range = parse_qubit_range(project_qubits);
        if (range.size() != 1) throw ConfigError("project takes a single qubit count");
        project_args.n_qubits = range.front();
        cmd_project(project_args);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symmetry-aware quantum state tomography"};
    try {
        return dispatch(app, argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const DimensionError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
