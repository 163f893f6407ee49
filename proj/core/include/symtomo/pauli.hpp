// Symplectic representation of Pauli tensor products and the coordinate map
// between Hermitian matrices and real vectors over the orthonormal Pauli
// basis. A string is P = i^{popcount(x & z)} X^x Z^z with one mask bit per
// qubit; every P is Hermitian, squares to the identity, and has exactly one
// nonzero entry per column, which keeps traces against dense matrices O(d).
#pragma once

#include <symtomo/types.hpp>

#include <cstdint>

namespace symtomo {

struct PauliString {
    std::uint32_t x = 0;
    std::uint32_t z = 0;
};

// Lexicographic index over site codes (I=0, X=1, Y=2, Z=3), leftmost tensor
// factor most significant; matches the canonical basis ordering.
PauliString pauli_string_from_index(int n_qubits, std::uint64_t index);
std::uint64_t pauli_index(int n_qubits, const PauliString& p);

ComplexMatrix pauli_dense(int n_qubits, const PauliString& p);

// tr(P m), exploiting the single nonzero per column.
Complex pauli_trace_product(int n_qubits, const PauliString& p, const ComplexMatrix& m);

// Coordinates of m in the orthonormal basis {P_p / sqrt(d)}; real up to
// round-off when m is Hermitian.
RealVector pauli_coords(int n_qubits, const ComplexMatrix& m);

ComplexMatrix matrix_from_pauli_coords(int n_qubits, const RealVector& coords);

}  // namespace symtomo
