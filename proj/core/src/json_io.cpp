#include <symtomo/json_io.hpp>

#include <json.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace symtomo::json_io {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw ValidationError(std::string("malformed JSON while reading ") + what);
    }
    return j;
}

const json& field(const json& j, const char* key, const char* what) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ValidationError(std::string(what) + " is missing required key '" + key + "'");
    }
    return *it;
}

json matrix_to_value(const ComplexMatrix& m) {
    json re = json::array();
    json im = json::array();
    for (Index row = 0; row < m.rows(); ++row) {
        json re_row = json::array();
        json im_row = json::array();
        for (Index col = 0; col < m.cols(); ++col) {
            re_row.push_back(m(row, col).real());
            im_row.push_back(m(row, col).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_value(const json& j) {
    if (!j.is_object()) throw ValidationError("matrix JSON must be an object");
    const Index d = field(j, "dim", "matrix").get<Index>();
    if (d <= 0) throw ValidationError("matrix dim must be positive");
    const json& re = field(j, "re", "matrix");
    const json& im = field(j, "im", "matrix");
    if (!re.is_array() || !im.is_array() || static_cast<Index>(re.size()) != d ||
        static_cast<Index>(im.size()) != d) {
        throw ValidationError("matrix re/im must be dim x dim arrays");
    }
    ComplexMatrix m(d, d);
    for (Index row = 0; row < d; ++row) {
        const json& re_row = re[static_cast<std::size_t>(row)];
        const json& im_row = im[static_cast<std::size_t>(row)];
        if (!re_row.is_array() || !im_row.is_array() ||
            static_cast<Index>(re_row.size()) != d || static_cast<Index>(im_row.size()) != d) {
            throw ValidationError("matrix re/im must be dim x dim arrays");
        }
        for (Index col = 0; col < d; ++col) {
            m(row, col) = Complex(re_row[static_cast<std::size_t>(col)].get<double>(),
                                  im_row[static_cast<std::size_t>(col)].get<double>());
        }
    }
    return m;
}

std::string kind_name(SymmetryKind kind) {
    return kind == SymmetryKind::lie ? "lie" : "finite";
}

SymmetryKind kind_from_name(const std::string& name) {
    if (name == "lie") return SymmetryKind::lie;
    if (name == "finite") return SymmetryKind::finite;
    throw ValidationError("unknown symmetry kind '" + name + "'");
}

std::string noise_name(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::none: return "none";
        case NoiseKind::binomial_photonic: return "binomial_photonic";
        case NoiseKind::gaussian: return "gaussian";
    }
    throw ValidationError("unknown noise kind");
}

NoiseKind noise_from_name(const std::string& name) {
    if (name == "none") return NoiseKind::none;
    if (name == "binomial_photonic") return NoiseKind::binomial_photonic;
    if (name == "gaussian") return NoiseKind::gaussian;
    throw ValidationError("unknown noise kind '" + name + "'");
}

json noise_to_value(const NoiseModel& noise) {
    json j{{"kind", noise_name(noise.kind)}};
    if (noise.kind == NoiseKind::binomial_photonic) {
        j["mu"] = noise.mu;
        j["lambda_dc"] = noise.lambda_dc;
        j["n_trials"] = noise.n_trials;
    } else if (noise.kind == NoiseKind::gaussian) {
        j["sigma"] = noise.sigma;
    }
    return j;
}

NoiseModel noise_from_value(const json& j) {
    if (!j.is_object()) throw ValidationError("noise JSON must be an object");
    NoiseModel noise;
    noise.kind = noise_from_name(field(j, "kind", "noise").get<std::string>());
    if (noise.kind == NoiseKind::binomial_photonic) {
        noise.mu = field(j, "mu", "noise").get<double>();
        noise.lambda_dc = field(j, "lambda_dc", "noise").get<double>();
        noise.n_trials = field(j, "n_trials", "noise").get<std::int64_t>();
    } else if (noise.kind == NoiseKind::gaussian) {
        noise.sigma = field(j, "sigma", "noise").get<double>();
    }
    if (const auto it = j.find("seed"); it != j.end()) {
        noise.seed = it->get<std::uint64_t>();
    }
    return noise;
}

std::string dump(const json& j, int indent) {
    return indent >= 0 ? j.dump(indent) : j.dump();
}

}  // namespace

std::string matrix_to_json(const ComplexMatrix& m, int indent) {
    return dump(matrix_to_value(m), indent);
}

ComplexMatrix matrix_from_json(const std::string& text) {
    return matrix_from_value(parse_or_throw(text, "a matrix"));
}

std::string spec_to_json(const SymmetrySpec& spec, int indent) {
    json gens = json::array();
    for (const auto& g : spec.generators) gens.push_back(matrix_to_value(g));
    const json j{{"kind", kind_name(spec.kind)},
                 {"n_qubits", spec.n_qubits},
                 {"label", spec.label},
                 {"generators", std::move(gens)}};
    return dump(j, indent);
}

SymmetrySpec spec_from_json(const std::string& text) {
    const json j = parse_or_throw(text, "a symmetry spec");
    SymmetrySpec spec;
    spec.kind = kind_from_name(field(j, "kind", "symmetry spec").get<std::string>());
    spec.n_qubits = field(j, "n_qubits", "symmetry spec").get<int>();
    spec.label = field(j, "label", "symmetry spec").get<std::string>();
    const json& gens = field(j, "generators", "symmetry spec");
    if (!gens.is_array()) throw ValidationError("symmetry spec generators must be an array");
    for (const auto& g : gens) spec.generators.push_back(matrix_from_value(g));
    validate_spec(spec);
    return spec;
}

std::string noise_to_json(const NoiseModel& noise, int indent) {
    json j = noise_to_value(noise);
    j["seed"] = noise.seed;
    return dump(j, indent);
}

NoiseModel noise_from_json(const std::string& text) {
    return noise_from_value(parse_or_throw(text, "a noise model"));
}

std::string record_to_json(const MeasurementRecord& record, int indent) {
    json values = json::array();
    for (const double v : record.values) {
        // JSON has no NaN literal; unmeasured entries round-trip as null.
        if (std::isnan(v)) {
            values.push_back(nullptr);
        } else {
            values.push_back(v);
        }
    }
    const json j{{"labels", record.set.labels},
                 {"values", std::move(values)},
                 {"value_kind",
                  record.value_kind == ValueKind::frequency ? "frequency" : "expectation"},
                 {"noise", noise_to_value(record.noise)},
                 {"seed", record.noise.seed}};
    return dump(j, indent);
}

MeasurementRecord record_from_json(const std::string& text, const MeasurementSet& set) {
    const json j = parse_or_throw(text, "a measurement record");
    const json& labels = field(j, "labels", "record");
    const json& values = field(j, "values", "record");
    if (!labels.is_array() || !values.is_array()) {
        throw ValidationError("record labels/values must be arrays");
    }
    if (static_cast<Index>(values.size()) != set.size() ||
        labels.size() != set.labels.size()) {
        throw ValidationError("record does not match the measurement set size");
    }
    for (std::size_t i = 0; i < set.labels.size(); ++i) {
        if (labels[i].get<std::string>() != set.labels[i]) {
            throw ValidationError("record label '" + labels[i].get<std::string>() +
                                  "' does not match measurement set label '" + set.labels[i] +
                                  "'");
        }
    }
    MeasurementRecord record{set, {}, ValueKind::frequency, {}};
    record.values.reserve(values.size());
    for (const auto& v : values) {
        if (v.is_null()) {
            record.values.push_back(std::numeric_limits<double>::quiet_NaN());
        } else {
            record.values.push_back(v.get<double>());
        }
    }
    const std::string kind = field(j, "value_kind", "record").get<std::string>();
    if (kind == "frequency") {
        record.value_kind = ValueKind::frequency;
    } else if (kind == "expectation") {
        record.value_kind = ValueKind::expectation;
    } else {
        throw ValidationError("unknown value_kind '" + kind + "'");
    }
    record.noise = noise_from_value(field(j, "noise", "record"));
    if (const auto it = j.find("seed"); it != j.end()) {
        record.noise.seed = it->get<std::uint64_t>();
    }
    return record;
}

std::string result_to_json(const EstimateResult& result, int indent) {
    json alpha = json::array();
    for (Index i = 0; i < result.alpha.size(); ++i) alpha.push_back(result.alpha[i]);
    json j{{"alpha", std::move(alpha)},
           {"rho", matrix_to_value(result.rho_hat.mat())},
           {"objective", result.objective},
           {"feas_residual", result.feas_residual},
           {"iterations", result.iterations},
           {"physical", result.physical}};
    if (result.fidelity_vs_target.has_value()) {
        j["fidelity"] = *result.fidelity_vs_target;
    }
    return dump(j, indent);
}

}  // namespace symtomo::json_io
