#include "config.hpp"

#include <symtomo/json_io.hpp>
#include <symtomo/symmetry.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace symtomo::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    const auto it = j.find(key);
    if (it == j.end()) return fallback;
    return it->get<T>();
}

NoiseModel noise_from(const json& j) {
    if (j.is_null()) return {};
    NoiseModel noise = json_io::noise_from_json(j.dump());
    return noise;
}

StateConfig state_from(const json& j) {
    StateConfig state;
    if (j.is_null()) return state;
    state.kind = get_or<std::string>(j, "kind", state.kind);
    state.p = get_or<double>(j, "p", state.p);
    state.rank = get_or<Index>(j, "rank", state.rank);
    state.seed = get_or<std::uint64_t>(j, "seed", state.seed);
    if (state.kind != "cat" && state.kind != "ghz" && state.kind != "random_symmetric") {
        throw ConfigError("unknown state kind '" + state.kind + "'");
    }
    return state;
}

EstimatorConfig estimator_from(const json& j) {
    EstimatorConfig est;
    if (j.is_null()) return est;
    est.kind = get_or<std::string>(j, "kind", est.kind);
    if (est.kind != "linear" && est.kind != "vqt" && est.kind != "baseline") {
        throw ConfigError("unknown estimator kind '" + est.kind + "'");
    }
    est.options.max_iterations = get_or<int>(j, "max_iterations", est.options.max_iterations);
    est.options.eps_feas = get_or<double>(j, "eps_feas", est.options.eps_feas);
    est.options.eps_obj = get_or<double>(j, "eps_obj", est.options.eps_obj);
    est.options.barrier_init = get_or<double>(j, "barrier_init", est.options.barrier_init);
    est.options.barrier_reduction =
        get_or<double>(j, "barrier_reduction", est.options.barrier_reduction);
    est.options.abs_value_variant =
        get_or<bool>(j, "abs_value_variant", est.options.abs_value_variant);
    return est;
}

}  // namespace

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("run config must be a JSON object");
    RunConfig cfg;
    cfg.document = j;
    cfg.symmetry = get_or<std::string>(j, "symmetry", cfg.symmetry);
    cfg.n_qubits = get_or<int>(j, "n_qubits", cfg.n_qubits);
    cfg.state = state_from(j.value("state", json()));
    if (const auto it = j.find("measurement"); it != j.end()) {
        cfg.measurement.kind = get_or<std::string>(*it, "kind", cfg.measurement.kind);
    }
    if (cfg.measurement.kind != "polarization" && cfg.measurement.kind != "eigenprojectors" &&
        cfg.measurement.kind != "direct_observables") {
        throw ConfigError("unknown measurement kind '" + cfg.measurement.kind + "'");
    }
    cfg.noise = noise_from(j.value("noise", json()));
    cfg.estimator = estimator_from(j.value("estimator", json()));
    cfg.repetitions = get_or<int>(j, "repetitions", cfg.repetitions);
    if (cfg.repetitions < 1) throw ConfigError("repetitions must be >= 1");
    cfg.out = get_or<std::string>(j, "out", cfg.out);
    cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed);
    cfg.workers = get_or<unsigned>(j, "workers", cfg.workers);
    if (const auto it = j.find("sweep"); it != j.end()) {
        if (!it->is_array()) throw ConfigError("sweep must be an array of merge patches");
        for (const auto& cell : *it) cfg.sweep.push_back(cell);
    }
    return cfg;
}

RunConfig load_config(const std::string& path, const Overrides& overrides) {
    json j = json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) throw ConfigError("malformed JSON in config '" + path + "'");
    if (overrides.symmetry) j["symmetry"] = *overrides.symmetry;
    if (overrides.n_qubits) j["n_qubits"] = *overrides.n_qubits;
    if (overrides.seed) j["seed"] = *overrides.seed;
    if (overrides.out) j["out"] = *overrides.out;
    try {
        return config_from_json(j);
    } catch (const ValidationError& e) {
        throw ConfigError(std::string("config '") + path + "': " + e.what());
    }
}

SymmetrySpec resolve_symmetry(const std::string& name_or_path, int n_qubits) {
    const auto& names = catalog_names();
    for (const auto& name : names) {
        if (name == name_or_path) return catalog_symmetry(name, n_qubits);
    }
    if (std::filesystem::exists(name_or_path)) {
        SymmetrySpec spec = json_io::spec_from_json(read_file(name_or_path));
        if (spec.n_qubits != n_qubits) {
            throw ConfigError("symmetry spec in '" + name_or_path + "' is for " +
                              std::to_string(spec.n_qubits) + " qubits, config says " +
                              std::to_string(n_qubits));
        }
        return spec;
    }
    std::string available;
    for (const auto& name : names) {
        if (!available.empty()) available += ", ";
        available += name;
    }
    throw ConfigError("unknown symmetry '" + name_or_path + "' (catalog: " + available +
                      "; or pass a path to a spec JSON)");
}

}  // namespace symtomo::cli
