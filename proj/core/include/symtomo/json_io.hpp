#pragma once

// JSON serialization for the on-disk interchange formats: dense Hermitian
// matrices, symmetry specifications, measurement records, and estimation
// results. The JSON library is an implementation detail of the .cpp; the
// public surface works with strings so the core headers stay light.

#include <symtomo/estimate.hpp>
#include <symtomo/statesim.hpp>
#include <symtomo/symmetry.hpp>
#include <symtomo/types.hpp>

#include <string>

namespace symtomo::json_io {

// Matrices serialize as {"dim": d, "re": [[..]], "im": [[..]]} row-major.
std::string matrix_to_json(const ComplexMatrix& m, int indent = -1);
ComplexMatrix matrix_from_json(const std::string& text);

std::string spec_to_json(const SymmetrySpec& spec, int indent = -1);
SymmetrySpec spec_from_json(const std::string& text);

std::string noise_to_json(const NoiseModel& noise, int indent = -1);
NoiseModel noise_from_json(const std::string& text);

// Records serialize as {"labels", "values", "value_kind", "noise", "seed"}.
// Effects are not embedded; reading a record back requires the measurement
// set it was taken against, and the stored labels are checked against it.
std::string record_to_json(const MeasurementRecord& record, int indent = -1);
MeasurementRecord record_from_json(const std::string& text, const MeasurementSet& set);

// Results serialize as {"alpha", "rho", "objective", "feas_residual",
// "iterations", "physical"} plus "fidelity" when one was recorded.
std::string result_to_json(const EstimateResult& result, int indent = -1);

}  // namespace symtomo::json_io
