// Symmetric operator subspaces: build S_G, the space of Hermitian operators
// commuting with every group generator, as the orthogonal complement of the
// span of the constraint operators i[Q_k, O_j]; project states onto it; and
// provide the generator catalogs.
#pragma once

#include <symtomo/matlin.hpp>

#include <string>
#include <vector>

namespace symtomo {

enum class SymmetryKind { lie, finite };

// Lie specs carry Hermitian generators Q_k; finite specs carry unitary group
// generators U_k. All generators share dimension 2^n_qubits.
struct SymmetrySpec {
    SymmetryKind kind = SymmetryKind::lie;
    int n_qubits = 1;
    std::string label;
    std::vector<ComplexMatrix> generators;
};

void validate_spec(const SymmetrySpec& spec, const NumericPolicy& policy = {});

// Orthonormal basis {S_1, ..., S_r} of S_G. coords holds one row of Pauli
// coordinates per element; complement_dim is c = 4^N - r.
struct SymmetricBasis {
    int n_qubits = 1;
    std::vector<HermitianOp> elements;
    SymmetrySpec spec;
    Index complement_dim = 0;
    RealMatrix coords;

    Index dim() const { return static_cast<Index>(elements.size()); }
};

// All m * 4^N constraint operators i[Q_k, O_j], generator index major, basis
// index minor. Zero matrices are kept; orthogonalization filters them.
std::vector<HermitianOp> lie_constraint_set(const SymmetrySpec& spec,
                                            const std::vector<HermitianOp>& basis);

// Replaces each unitary U by (U + U^dagger)/2 and (U - U^dagger)/(2i); the
// commutant is unchanged because [rho, U] = 0 splits into its Hermitian and
// anti-Hermitian parts, each vanishing independently.
SymmetrySpec finite_to_hermitian_constraints(const SymmetrySpec& spec);

// Builds the basis of S_G: constraint operators are orthogonalized (modified
// Gram-Schmidt with re-orthogonalization, candidates dropped when their
// residual falls below policy.rank_tol relative to their input norm) into c
// spanning vectors of the complement; the Pauli basis is then appended and
// re-orthogonalized, and the survivors are the r = 4^N - c basis elements.
SymmetricBasis symmetric_basis(const SymmetrySpec& spec, const NumericPolicy& policy = {});

// rho_G = sum_i tr(rho S_i) S_i, the twirl of rho; trace preserving and PSD
// preserving.
DensityMatrix project_symmetric(const DensityMatrix& rho, const SymmetricBasis& basis);

// Catalog: qubit permutations, generated by the transpositions P_{1j}.
SymmetrySpec perm_generators(int n_qubits);

// Catalog: collective single-qubit action U^{xN}, Lie generators
// sum_sites sigma_k at one site, k = 0..3.
SymmetrySpec werner_generators(int n_qubits);

// Catalog: global rotations about z, single generator sum_i sigma_z^(i).
SymmetrySpec global_rotation_generator(int n_qubits);

// Catalog: independent per-qubit rotations about z, N generators.
SymmetrySpec individual_rotation_generators(int n_qubits);

const std::vector<std::string>& catalog_names();

// Resolves one of the catalog names; unknown names raise a ValidationError
// listing the available entries.
SymmetrySpec catalog_symmetry(const std::string& name, int n_qubits);

}  // namespace symtomo
