// Independent reference implementations used to cross-check the library.
// Everything here is deliberately brute force: the point is that none of it
// shares an algorithm with the code under test.
#pragma once

#include <symtomo/estimate.hpp>
#include <symtomo/statesim.hpp>
#include <symtomo/symmetry.hpp>

#include <vector>

namespace symtomo::oracles {

// Dimension of {O Hermitian : i[Q_k, O] = 0 for all k} (Lie) or
// {O : U_k O U_k^dag = O} (finite), computed as the nullspace of the stacked
// constraint map expressed in Pauli coordinates.
Index commutant_dim(const SymmetrySpec& spec);

// All elements of the finite group generated by spec.generators, found by
// breadth-first closure under products. Throws if the closure exceeds cap.
std::vector<ComplexMatrix> finite_closure(const SymmetrySpec& spec, std::size_t cap = 4096);

// Orthogonal projection of rho onto the commutant, built from the nullspace
// of the constraint map (not from the library's basis construction).
ComplexMatrix project_oracle(const ComplexMatrix& rho, const SymmetrySpec& spec);

// Derivative-free minimizer for the estimation program
//   min sum_i Delta_i  s.t.  |tr(E_i rho) - f_i| <= Delta_i w_i, tr rho = 1,
//   rho >= 0,
// over rho = sum_j alpha_j S_j, by pattern search over the trace-eliminated
// coordinates with PSD rejection. Only suitable for small bases (r <= 8);
// records must not contain f = 0 rows. Unmeasured rows (NaN) contribute
// tr(E_i rho) to the objective, matching the solver's program.
struct GridOracle {
    double objective = 0.0;
    RealVector alpha;
};
GridOracle grid_minimize(const MeasurementRecord& record, const SymmetricBasis& basis,
                         bool abs_value_variant = false);

// Objective of the program above evaluated at alpha; +inf if rho(alpha) is
// more than psd_slack outside the PSD cone or the trace is off by > 1e-9.
double program_objective(const MeasurementRecord& record, const SymmetricBasis& basis,
                         const RealVector& alpha, bool abs_value_variant = false,
                         double psd_slack = 1e-9);

}  // namespace symtomo::oracles
