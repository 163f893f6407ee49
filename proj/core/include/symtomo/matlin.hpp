// Dense complex Hermitian linear algebra at dimension d = 2^N: validated
// operator types, the Pauli operator basis, inner products, tensor products,
// eigendecomposition, PSD tests and Uhlmann fidelity.
#pragma once

#include <symtomo/types.hpp>

#include <vector>

namespace symtomo {

class HermitianOp {
  public:
    explicit HermitianOp(ComplexMatrix mat, double herm_tol = NumericPolicy{}.herm_tol);

    const ComplexMatrix& mat() const { return mat_; }
    Index dim() const { return mat_.rows(); }
    double trace() const { return mat_.trace().real(); }

  private:
    ComplexMatrix mat_;
};

class DensityMatrix {
  public:
    explicit DensityMatrix(HermitianOp op, const NumericPolicy& policy = {});

    const HermitianOp& op() const { return op_; }
    const ComplexMatrix& mat() const { return op_.mat(); }
    Index dim() const { return op_.dim(); }

  private:
    HermitianOp op_;
};

// Eigenvalues descending; eigenvectors are the matching orthonormal columns.
struct Spectrum {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

// Normalized Pauli tensor basis {sigma_{i1} x ... x sigma_{iN} / sqrt(2^N)},
// lexicographic in (i1, ..., iN) with I, X, Y, Z codes; element 0 is
// I / sqrt(2^N). Orthonormal under hs_inner.
std::vector<HermitianOp> pauli_basis(int n_qubits);

// Hilbert-Schmidt inner product tr(A B^dagger); real for Hermitian inputs.
double hs_inner(const HermitianOp& a, const HermitianOp& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// i(AB - BA); Hermitian whenever A and B are.
HermitianOp commutator_i(const HermitianOp& a, const HermitianOp& b);

Spectrum eig_hermitian(const HermitianOp& m);

double min_eigenvalue(const HermitianOp& m);

bool is_psd(const HermitianOp& m, double tol);

// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, eigenvalues
// clamped at zero to absorb solver round-off near the PSD boundary.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace symtomo
