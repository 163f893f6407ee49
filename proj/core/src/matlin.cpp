#include <symtomo/matlin.hpp>

#include <symtomo/pauli.hpp>

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace symtomo {

HermitianOp::HermitianOp(ComplexMatrix mat, double herm_tol) : mat_(std::move(mat)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
        throw DimensionError("HermitianOp requires a square matrix of dim >= 1");
    }
    const double dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (dev > herm_tol) {
        std::ostringstream msg;
        msg << "matrix is not Hermitian: max |M - M^dagger| = " << dev
            << " exceeds " << herm_tol;
        throw ValidationError(msg.str());
    }
}

DensityMatrix::DensityMatrix(HermitianOp op, const NumericPolicy& policy) : op_(std::move(op)) {
    const double trace_dev = std::abs(op_.trace() - 1.0);
    if (trace_dev > policy.psd_tol) {
        std::ostringstream msg;
        msg << "density matrix trace deviates from 1 by " << trace_dev;
        throw ValidationError(msg.str());
    }
    const double lambda_min = min_eigenvalue(op_);
    if (lambda_min < -policy.psd_tol) {
        std::ostringstream msg;
        msg << "density matrix has eigenvalue " << lambda_min << " below -" << policy.psd_tol;
        throw ValidationError(msg.str());
    }
}

std::vector<HermitianOp> pauli_basis(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 6) {
        throw DimensionError("pauli_basis supports 1 <= n_qubits <= 6");
    }
    const Index d = dim_for_qubits(n_qubits);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    const Index count = d * d;
    std::vector<HermitianOp> basis;
    basis.reserve(static_cast<std::size_t>(count));
    for (Index idx = 0; idx < count; ++idx) {
        const PauliString p = pauli_string_from_index(n_qubits, static_cast<std::uint64_t>(idx));
        basis.emplace_back(pauli_dense(n_qubits, p) * norm);
    }
    return basis;
}

double hs_inner(const HermitianOp& a, const HermitianOp& b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("hs_inner dimension mismatch");
    }
    return a.mat().cwiseProduct(b.mat().conjugate()).sum().real();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

HermitianOp commutator_i(const HermitianOp& a, const HermitianOp& b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("commutator_i dimension mismatch");
    }
    const ComplexMatrix ab = a.mat() * b.mat();
    ComplexMatrix c = Complex(0, 1) * (ab - ab.adjoint());
    c = ((c + c.adjoint()) / 2.0).eval();
    return HermitianOp(std::move(c));
}

Spectrum eig_hermitian(const HermitianOp& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.mat());
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Hermitian eigensolver failed to converge");
    }
    Spectrum spectrum;
    spectrum.eigenvalues = solver.eigenvalues().reverse();
    spectrum.eigenvectors = solver.eigenvectors().rowwise().reverse();
    return spectrum;
}

double min_eigenvalue(const HermitianOp& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.mat(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Hermitian eigensolver failed to converge");
    }
    return solver.eigenvalues().minCoeff();
}

bool is_psd(const HermitianOp& m, double tol) {
    return min_eigenvalue(m) >= -tol;
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionError("fidelity dimension mismatch");
    }
    const Spectrum spec = eig_hermitian(rho.op());
    RealVector sqrt_vals = spec.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    const ComplexMatrix sqrt_rho =
        spec.eigenvectors * sqrt_vals.asDiagonal() * spec.eigenvectors.adjoint();
    ComplexMatrix inner = sqrt_rho * sigma.mat() * sqrt_rho;
    inner = ((inner + inner.adjoint()) / 2.0).eval();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(inner, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("fidelity eigensolver failed to converge");
    }
    const double root_sum = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

}  // namespace symtomo
