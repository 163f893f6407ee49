#include <symtomo/estimate.hpp>

#include <symtomo/pauli.hpp>

#include "estimate_internal.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <utility>

namespace symtomo {

namespace internal {

RealMatrix design_rows(const MeasurementSet& set, const SymmetricBasis& basis) {
    const Index d = dim_for_qubits(basis.n_qubits);
    RealMatrix rows(set.size(), basis.dim());
    for (Index i = 0; i < set.size(); ++i) {
        if (set.effects[static_cast<std::size_t>(i)].dim() != d) {
            throw DimensionError("effect dimension does not match basis");
        }
        rows.row(i) =
            basis.coords *
            pauli_coords(basis.n_qubits, set.effects[static_cast<std::size_t>(i)].mat());
    }
    return rows;
}

RealVector trace_vector(const SymmetricBasis& basis) {
    RealVector tau(basis.dim());
    for (Index j = 0; j < basis.dim(); ++j) {
        tau[j] = basis.elements[static_cast<std::size_t>(j)].trace();
    }
    return tau;
}

// Columns form an orthonormal basis of the hyperplane tau^T alpha = 0.
RealMatrix trace_nullspace(const RealVector& tau) {
    const Index r = tau.size();
    Eigen::HouseholderQR<RealMatrix> qr(tau);
    RealMatrix q = qr.householderQ() * RealMatrix::Identity(r, r);
    return q.rightCols(r - 1);
}

ComplexMatrix assemble_state(const SymmetricBasis& basis, const RealVector& alpha) {
    return matrix_from_pauli_coords(basis.n_qubits, basis.coords.transpose() * alpha);
}

}  // namespace internal

DesignMatrix design_matrix(const MeasurementSet& set, const SymmetricBasis& basis) {
    DesignMatrix design;
    design.entries = internal::design_rows(set, basis);
    Eigen::JacobiSVD<RealMatrix> svd(design.entries);
    const RealVector& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] == 0.0) {
        design.rank = 0;
        design.condition = 0.0;
        return design;
    }
    const double threshold = 1e-10 * sv[0];
    Index rank = 0;
    while (rank < sv.size() && sv[rank] > threshold) ++rank;
    design.rank = rank;
    design.condition = sv[0] / sv[rank - 1];
    return design;
}

MeasurementSet select_quorum(const MeasurementSet& pool, const SymmetricBasis& basis,
                             Index target_count) {
    if (pool.effects.empty()) {
        throw EstimationError("select_quorum requires a nonempty pool");
    }
    const Index r = basis.dim();
    const RealMatrix rows = internal::design_rows(pool, basis);
    const NumericPolicy policy;

    MeasurementSet chosen;
    chosen.kind = pool.kind;
    RealMatrix q(r, r);
    Index rank = 0;
    for (Index i = 0; i < pool.size(); ++i) {
        if (rank == r) {
            if (chosen.size() >= target_count) break;
            chosen.effects.push_back(pool.effects[static_cast<std::size_t>(i)]);
            if (!pool.labels.empty()) chosen.labels.push_back(pool.labels[static_cast<std::size_t>(i)]);
            continue;
        }
        RealVector v = rows.row(i);
        const double pre = v.norm();
        if (pre == 0.0) continue;
        for (int pass = 0; pass < 2; ++pass) {
            if (rank > 0) {
                const auto accepted = q.leftCols(rank);
                v -= accepted * (accepted.transpose() * v);
            }
        }
        const double post = v.norm();
        if (post <= policy.rank_tol * pre) continue;
        q.col(rank++) = v / post;
        chosen.effects.push_back(pool.effects[static_cast<std::size_t>(i)]);
        if (!pool.labels.empty()) chosen.labels.push_back(pool.labels[static_cast<std::size_t>(i)]);
    }
    if (rank < r) {
        std::ostringstream msg;
        msg << "insufficient quorum: pool reaches design rank " << rank << " of " << r
            << " (deficit " << (r - rank) << ")";
        throw EstimationError(msg.str());
    }
    return chosen;
}

EstimateResult linear_inversion(const MeasurementRecord& record, const SymmetricBasis& basis) {
    const Index r = basis.dim();
    for (const double value : record.values) {
        if (!std::isfinite(value)) {
            throw ValidationError("linear_inversion requires finite record values");
        }
    }
    if (static_cast<Index>(record.values.size()) != record.set.size()) {
        throw ValidationError("record values do not match its measurement set");
    }

    const DesignMatrix design = design_matrix(record.set, basis);
    if (design.rank < r) {
        std::ostringstream msg;
        msg << "under-determined record: design matrix rank " << design.rank << " < " << r;
        throw EstimationError(msg.str());
    }

    const RealVector f = Eigen::Map<const RealVector>(record.values.data(),
                                                      static_cast<Index>(record.values.size()));
    const RealVector tau = internal::trace_vector(basis);
    const RealVector alpha_particular = tau / tau.squaredNorm();
    RealVector alpha;
    if (r == 1) {
        alpha = alpha_particular;
    } else {
        const RealMatrix z = internal::trace_nullspace(tau);
        const RealMatrix mz = design.entries * z;
        const RealVector rhs = f - design.entries * alpha_particular;
        const RealVector y = mz.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
        alpha = alpha_particular + z * y;
    }

    HermitianOp rho_hat(internal::assemble_state(basis, alpha));
    const double lambda_min = min_eigenvalue(rho_hat);
    const double trace_dev = std::abs(rho_hat.trace() - 1.0);
    const RealVector residual = design.entries * alpha - f;

    EstimateResult result{
        std::move(alpha),
        std::move(rho_hat),
        residual.norm(),
        residual.cwiseAbs(),
        1,
        trace_dev,
        lambda_min,
        trace_dev <= 1e-8 && lambda_min >= -1e-7,
        std::nullopt,
    };
    return result;
}

EstimateResult baseline_full_inversion(const MeasurementRecord& record) {
    if (record.set.effects.empty()) {
        throw ValidationError("baseline_full_inversion requires a nonempty record");
    }
    const Index d = record.set.effects.front().dim();
    const int n_qubits = std::countr_zero(static_cast<std::uint64_t>(d));
    if (dim_for_qubits(n_qubits) != d) {
        throw DimensionError("effect dimension is not a power of two");
    }
    SymmetricBasis trivial;
    trivial.n_qubits = n_qubits;
    trivial.elements = pauli_basis(n_qubits);
    trivial.spec = SymmetrySpec{SymmetryKind::lie, n_qubits, "trivial", {}};
    trivial.complement_dim = 0;
    trivial.coords = RealMatrix::Identity(d * d, d * d);
    return linear_inversion(record, trivial);
}

double fidelity_report(EstimateResult& result, const DensityMatrix& target) {
    if (result.rho_hat.dim() != target.dim()) {
        throw DimensionError("fidelity_report dimension mismatch");
    }
    const Spectrum spec = eig_hermitian(result.rho_hat);
    RealVector clamped = spec.eigenvalues.cwiseMax(0.0);
    const double total = clamped.sum();
    if (total <= 0.0) {
        throw NumericalError("estimate has no positive spectral weight");
    }
    clamped /= total;
    ComplexMatrix mat =
        spec.eigenvectors * clamped.asDiagonal() * spec.eigenvectors.adjoint();
    mat = ((mat + mat.adjoint()) / 2.0).eval();
    const DensityMatrix physical_estimate{HermitianOp(std::move(mat))};
    const double value = fidelity(physical_estimate, target);
    result.fidelity_vs_target = value;
    return value;
}

}  // namespace symtomo
