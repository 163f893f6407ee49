// State reconstruction from measurement records: quorum selection, linear
// inversion in the alpha coordinates, the PSD-constrained convex program
// (barrier interior-point solver), and a full-tomography baseline.
#pragma once

#include <symtomo/statesim.hpp>

#include <optional>

namespace symtomo {

struct DesignMatrix {
    RealMatrix entries;  // (#effects) x r, entries[i][j] = tr(S_j E_i)
    Index rank = 0;
    double condition = 0.0;
};

struct SolverOptions {
    int max_iterations = 2000;  // total Newton steps across all centerings
    double eps_feas = 1e-7;
    double eps_obj = 1e-6;
    double barrier_init = 1.0;
    double barrier_reduction = 0.2;
    // Weight the tolerance constraints by |f_i| instead of f_i. Records with
    // expectation values use the absolute variant regardless; for frequency
    // records the two coincide since f_i >= 0.
    bool abs_value_variant = false;
};

struct EstimateResult {
    RealVector alpha;
    HermitianOp rho_hat;
    double objective = 0.0;
    RealVector deltas;
    int iterations = 0;
    double feas_residual = 0.0;
    double min_eig = 0.0;
    bool physical = false;
    std::optional<double> fidelity_vs_target;
};

DesignMatrix design_matrix(const MeasurementSet& set, const SymmetricBasis& basis);

// Greedy scan of the pool in order, keeping an effect iff it raises the rank
// of the accumulated design matrix, until rank r; further effects are then
// appended in pool order up to target_count. Fails with an EstimationError
// naming the rank deficit when the pool cannot reach rank r.
MeasurementSet select_quorum(const MeasurementSet& pool, const SymmetricBasis& basis,
                             Index target_count = 0);

// Least-squares solution of the Born system under the unit-trace constraint.
// Positivity is NOT enforced; unphysical outputs are returned as-is with
// physical = false and the minimum eigenvalue recorded.
EstimateResult linear_inversion(const MeasurementRecord& record, const SymmetricBasis& basis);

// Solves  min sum_i Delta_i + sum_{i unmeasured} tr(E_i rho)
//         s.t. |tr(E_i rho) - f_i| <= Delta_i |f_i|, Delta_i >= 0,
//              tr rho = 1, rho >= 0,  over rho = sum_j alpha_j S_j.
// Rows with f_i = 0 are hard equalities, enforced exactly by restricting to
// the face of the PSD cone they pin down; entries of the record whose value
// is NaN are treated as unmeasured and enter the second objective sum.
// Realized as a primal barrier interior-point method over the alpha
// coordinates.
EstimateResult vqt_estimate(const MeasurementRecord& record, const SymmetricBasis& basis,
                            const SolverOptions& opts = {});

// Linear inversion over the full Pauli basis, no symmetry assumption.
EstimateResult baseline_full_inversion(const MeasurementRecord& record);

// Uhlmann fidelity between the clamped, renormalized estimate and the target;
// stored back into the result.
double fidelity_report(EstimateResult& result, const DensityMatrix& target);

}  // namespace symtomo
