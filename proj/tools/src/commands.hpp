#pragma once

#include "config.hpp"

#include <optional>
#include <string>
#include <vector>

namespace symtomo::cli {

struct DimsArgs {
    std::string symmetry = "permutation";
    std::vector<int> qubits;
    std::optional<std::string> out;
};

struct ProjectArgs {
    std::string state_path;
    std::string symmetry;
    int n_qubits = 0;
    std::string out = ".";
};

void cmd_dims(const DimsArgs& args);
void cmd_estimate(const RunConfig& cfg);
void cmd_simulate(const RunConfig& cfg);
void cmd_benchmark(const RunConfig& cfg);
void cmd_project(const ProjectArgs& args);

std::vector<int> parse_qubit_range(const std::string& text);

}  // namespace symtomo::cli
