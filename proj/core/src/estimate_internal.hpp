#pragma once

#include <symtomo/estimate.hpp>

namespace symtomo::internal {

RealMatrix design_rows(const MeasurementSet& set, const SymmetricBasis& basis);
RealVector trace_vector(const SymmetricBasis& basis);
RealMatrix trace_nullspace(const RealVector& tau);
ComplexMatrix assemble_state(const SymmetricBasis& basis, const RealVector& alpha);

}  // namespace symtomo::internal
