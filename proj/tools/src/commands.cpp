#include "commands.hpp"

#include "parallel.hpp"

#include <symtomo/estimate.hpp>
#include <symtomo/json_io.hpp>
#include <symtomo/rng.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

namespace symtomo::cli {

namespace {

using nlohmann::json;

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << text;
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[40];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

DensityMatrix build_state(const StateConfig& state, const SymmetricBasis& basis) {
    if (state.kind == "cat") return cat_state(basis.n_qubits, state.p);
    if (state.kind == "ghz") return cat_state(basis.n_qubits, 0.5);
    const Index d = dim_for_qubits(basis.n_qubits);
    const Index rank = state.rank > 0 ? state.rank : d;
    return random_symmetric_state(basis, rank, state.seed);
}

MeasurementSet build_measurement(const MeasurementConfig& measurement,
                                 const SymmetricBasis& basis, bool full_pool) {
    if (measurement.kind == "polarization") {
        MeasurementSet pool = polarization_projector_pool(basis.n_qubits);
        if (full_pool) return pool;
        return select_quorum(pool, basis, basis.dim());
    }
    if (measurement.kind == "eigenprojectors") return eigenprojector_set(basis);
    return direct_observable_set(basis);
}

EstimateResult run_estimator(const EstimatorConfig& estimator, const MeasurementRecord& record,
                             const SymmetricBasis& basis) {
    if (estimator.kind == "linear") return linear_inversion(record, basis);
    if (estimator.kind == "baseline") return baseline_full_inversion(record);
    return vqt_estimate(record, basis, estimator.options);
}

struct CellResult {
    double x = 0.0;
    std::string label;
    RunConfig cfg;
    std::vector<double> fidelities;
    std::vector<double> solve_ms;
    int failures = 0;
    std::string first_error;
};

void run_cell(CellResult& cell, std::uint64_t master_seed, std::size_t cell_index) {
    const RunConfig& cfg = cell.cfg;
    const SymmetrySpec spec = resolve_symmetry(cfg.symmetry, cfg.n_qubits);
    const SymmetricBasis basis = symmetric_basis(spec);
    const bool full_pool = cfg.estimator.kind == "baseline";
    const MeasurementSet set = build_measurement(cfg.measurement, basis, full_pool);
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
        try {
            StateConfig state_cfg = cfg.state;
            if (state_cfg.kind == "random_symmetric") {
                state_cfg.seed = derive_seed(master_seed, cell_index,
                                             2 * static_cast<std::uint64_t>(rep) + 1);
            }
            const DensityMatrix target = build_state(state_cfg, basis);
            NoiseModel noise = cfg.noise;
            noise.seed =
                derive_seed(master_seed, cell_index, 2 * static_cast<std::uint64_t>(rep));
            const MeasurementRecord record = simulate(target, set, noise);
            const auto t0 = std::chrono::steady_clock::now();
            EstimateResult result = run_estimator(cfg.estimator, record, basis);
            const auto t1 = std::chrono::steady_clock::now();
            cell.fidelities.push_back(fidelity_report(result, target));
            cell.solve_ms.push_back(
                std::chrono::duration<double, std::milli>(t1 - t0).count());
        } catch (const std::exception& e) {
            ++cell.failures;
            if (cell.first_error.empty()) cell.first_error = e.what();
        }
    }
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double acc = 0.0;
    for (const double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

}  // namespace

std::vector<int> parse_qubit_range(const std::string& text) {
    std::vector<int> out;
    const auto parse_int = [&](const std::string& s) {
        try {
            std::size_t pos = 0;
            const int v = std::stoi(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("cannot parse qubit count '" + s + "'");
        }
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        out.push_back(parse_int(text));
    } else {
        const int lo = parse_int(text.substr(0, dots));
        const int hi = parse_int(text.substr(dots + 2));
        if (lo > hi) throw ConfigError("empty qubit range '" + text + "'");
        for (int n = lo; n <= hi; ++n) out.push_back(n);
    }
    for (const int n : out) {
        if (n < 1 || n > 6) {
            throw ConfigError("qubit count " + std::to_string(n) + " outside the supported 1..6");
        }
    }
    return out;
}

void cmd_dims(const DimsArgs& args) {
    std::ostringstream csv;
    csv << "symmetry,n_qubits,r,r_minus_1,sqt_params\n";
    std::printf("%-22s %3s %6s %8s %10s\n", "symmetry", "N", "r", "r-1", "sqt(4^N-1)");
    for (const int n : args.qubits) {
        const SymmetrySpec spec = resolve_symmetry(args.symmetry, n);
        const SymmetricBasis basis = symmetric_basis(spec);
        const Index r = basis.dim();
        const Index sqt = (Index{1} << (2 * n)) - 1;
        std::printf("%-22s %3d %6td %8td %10td\n", spec.label.c_str(), n, r, r - 1, sqt);
        csv << spec.label << ',' << n << ',' << r << ',' << r - 1 << ',' << sqt << '\n';
    }
    if (args.out) {
        const std::filesystem::path path = std::filesystem::path(*args.out) / "dims.csv";
        write_text(path, csv.str());
        std::printf("wrote %s\n", path.string().c_str());
    }
}

void cmd_estimate(const RunConfig& cfg) {
    const SymmetrySpec spec = resolve_symmetry(cfg.symmetry, cfg.n_qubits);
    const SymmetricBasis basis = symmetric_basis(spec);
    const bool full_pool = cfg.estimator.kind == "baseline";
    const MeasurementSet set = build_measurement(cfg.measurement, basis, full_pool);
    const DensityMatrix target = build_state(cfg.state, basis);
    NoiseModel noise = cfg.noise;
    noise.seed = cfg.seed;
    const MeasurementRecord record = simulate(target, set, noise);

    const auto t0 = std::chrono::steady_clock::now();
    EstimateResult result = run_estimator(cfg.estimator, record, basis);
    const auto t1 = std::chrono::steady_clock::now();
    const double fid = fidelity_report(result, target);

    const std::filesystem::path out_path = std::filesystem::path(cfg.out) / "result.json";
    write_text(out_path, json_io::result_to_json(result, 2) + "\n");

    std::printf("symmetry      %s (N=%d, r=%td)\n", spec.label.c_str(), cfg.n_qubits,
                basis.dim());
    std::printf("measurement   %s (%td effects)\n", cfg.measurement.kind.c_str(), set.size());
    std::printf("estimator     %s\n", cfg.estimator.kind.c_str());
    std::printf("iterations    %d\n", result.iterations);
    std::printf("objective     %s\n", fmt_g(result.objective).c_str());
    std::printf("feas_residual %s\n", fmt_g(result.feas_residual).c_str());
    std::printf("min_eig       %s\n", fmt_g(result.min_eig).c_str());
    std::printf("physical      %s\n", result.physical ? "yes" : "no");
    std::printf("fidelity      %.9f\n", fid);
    std::printf("solve_ms      %.3f\n",
                std::chrono::duration<double, std::milli>(t1 - t0).count());
    std::printf("wrote %s\n", out_path.string().c_str());
}

void cmd_simulate(const RunConfig& cfg) {
    const SymmetrySpec spec = resolve_symmetry(cfg.symmetry, cfg.n_qubits);
    const SymmetricBasis basis = symmetric_basis(spec);
    const bool full_pool = cfg.estimator.kind == "baseline";
    const MeasurementSet set = build_measurement(cfg.measurement, basis, full_pool);
    const DensityMatrix target = build_state(cfg.state, basis);
    NoiseModel noise = cfg.noise;
    noise.seed = cfg.seed;
    const MeasurementRecord record = simulate(target, set, noise);

    const std::filesystem::path out_path = std::filesystem::path(cfg.out) / "record.json";
    write_text(out_path, json_io::record_to_json(record, 2) + "\n");
    std::printf("simulated %td effects (%s, %s noise), seed %llu\n", set.size(),
                cfg.measurement.kind.c_str(),
                cfg.noise.kind == NoiseKind::none             ? "no"
                : cfg.noise.kind == NoiseKind::binomial_photonic ? "binomial photonic"
                                                                 : "gaussian",
                static_cast<unsigned long long>(cfg.seed));
    std::printf("wrote %s\n", out_path.string().c_str());
}

void cmd_benchmark(const RunConfig& cfg) {
    json base = cfg.document;
    base.erase("sweep");
    std::vector<json> patches = cfg.sweep;
    if (patches.empty()) patches.push_back(json::object());

    std::vector<CellResult> cells(patches.size());
    for (std::size_t i = 0; i < patches.size(); ++i) {
        json merged = base;
        merged.merge_patch(patches[i]);
        merged.erase("x");
        merged.erase("label");
        cells[i].cfg = config_from_json(merged);
        cells[i].x = patches[i].value("x", static_cast<double>(i));
        cells[i].label = patches[i].value("label", std::string());
    }

    const unsigned workers = cfg.workers;
    parallel_for(cells.size(), workers == 0 ? 64 : workers, [&](std::size_t i) {
        try {
            run_cell(cells[i], cfg.seed, i);
        } catch (const std::exception& e) {
            cells[i].failures += cells[i].cfg.repetitions;
            if (cells[i].first_error.empty()) cells[i].first_error = e.what();
        }
    });

    std::ostringstream csv;
    csv << "# generated " << timestamp_utc() << "\n";
    csv << "cell,label,x,symmetry,n_qubits,state,measurement,estimator,noise,mu,lambda_dc,"
           "n_trials,sigma,repetitions,failures,fidelity_mean,fidelity_std,solve_ms_mean,"
           "fidelities\n";
    std::ostringstream plot;
    plot << "# generated " << timestamp_utc() << "\n";
    plot << "x,fidelity_mean,fidelity_std\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const CellResult& cell = cells[i];
        const RunConfig& c = cell.cfg;
        const char* noise_name = c.noise.kind == NoiseKind::none ? "none"
                                 : c.noise.kind == NoiseKind::binomial_photonic
                                     ? "binomial_photonic"
                                     : "gaussian";
        const double mean = mean_of(cell.fidelities);
        const double dev = std_of(cell.fidelities);
        std::string joined;
        for (const double fidelity : cell.fidelities) {
            if (!joined.empty()) joined += ';';
            joined += fmt_g(fidelity);
        }
        csv << i << ',' << cell.label << ',' << fmt_g(cell.x) << ',' << c.symmetry << ','
            << c.n_qubits << ',' << c.state.kind << ',' << c.measurement.kind << ','
            << c.estimator.kind << ',' << noise_name << ',' << fmt_g(c.noise.mu) << ','
            << fmt_g(c.noise.lambda_dc) << ',' << c.noise.n_trials << ','
            << fmt_g(c.noise.sigma) << ',' << c.repetitions << ',' << cell.failures << ','
            << fmt_g(mean) << ',' << fmt_g(dev) << ',' << fmt_g(mean_of(cell.solve_ms)) << ','
            << joined << '\n';
        plot << fmt_g(cell.x) << ',' << fmt_g(mean) << ',' << fmt_g(dev) << '\n';
        if (cell.failures > 0) {
            std::fprintf(stderr, "cell %zu: %d/%d repetitions failed (%s)\n", i, cell.failures,
                         c.repetitions, cell.first_error.c_str());
        }
    }

    const std::filesystem::path csv_path = std::filesystem::path(cfg.out) / "benchmark.csv";
    const std::filesystem::path plot_path =
        std::filesystem::path(cfg.out) / "benchmark_plot.csv";
    write_text(csv_path, csv.str());
    write_text(plot_path, plot.str());
    std::printf("%zu cells, wrote %s and %s\n", cells.size(), csv_path.string().c_str(),
                plot_path.string().c_str());
}

void cmd_project(const ProjectArgs& args) {
    std::ifstream in(args.state_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + args.state_path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const ComplexMatrix m = json_io::matrix_from_json(buffer.str());
    const DensityMatrix rho{HermitianOp(m)};

    const SymmetrySpec spec = resolve_symmetry(args.symmetry, args.n_qubits);
    const SymmetricBasis basis = symmetric_basis(spec);
    const DensityMatrix projected = project_symmetric(rho, basis);

    const double purity_in = hs_inner(rho.op(), rho.op());
    const double purity_proj = hs_inner(projected.op(), projected.op());
    const std::filesystem::path out_path = std::filesystem::path(args.out) / "projected.json";
    write_text(out_path, json_io::matrix_to_json(projected.mat(), 2) + "\n");
    std::printf("symmetry         %s (N=%d, r=%td)\n", spec.label.c_str(), args.n_qubits,
                basis.dim());
    std::printf("symmetric_weight %.12f\n", purity_proj / purity_in);
    std::printf("wrote %s\n", out_path.string().c_str());
}

}  // namespace symtomo::cli
