// Run configuration: one JSON document describing the simulate -> estimate
// pipeline, with CLI flags overriding individual fields and benchmark sweeps
// expressed as JSON merge patches on the base document.
#pragma once

#include <symtomo/estimate.hpp>
#include <symtomo/statesim.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace symtomo::cli {

struct StateConfig {
    std::string kind = "cat";  // cat | ghz | random_symmetric
    double p = 0.5;
    Index rank = 0;  // 0 selects full rank
    std::uint64_t seed = 1;
};

struct MeasurementConfig {
    std::string kind = "polarization";  // polarization | eigenprojectors | direct_observables
};

struct EstimatorConfig {
    std::string kind = "vqt";  // linear | vqt | baseline
    SolverOptions options;
};

struct RunConfig {
    std::string symmetry = "permutation";  // catalog name or path to a spec JSON
    int n_qubits = 3;
    StateConfig state;
    MeasurementConfig measurement;
    NoiseModel noise;
    EstimatorConfig estimator;
    int repetitions = 1;
    std::string out = ".";
    std::uint64_t seed = 1;
    unsigned workers = 0;  // 0 selects hardware concurrency
    nlohmann::json document;       // the merged source document
    std::vector<nlohmann::json> sweep;
};

struct Overrides {
    std::optional<std::string> symmetry;
    std::optional<int> n_qubits;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
};

RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path, const Overrides& overrides);

// Resolves a catalog name, or reads a SymmetrySpec JSON from disk when the
// string names an existing file.
SymmetrySpec resolve_symmetry(const std::string& name_or_path, int n_qubits);

}  // namespace symtomo::cli
