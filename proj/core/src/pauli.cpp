#include <symtomo/pauli.hpp>

#include <bit>
#include <cmath>

namespace symtomo {

namespace {

constexpr Complex kPhases[4] = {
    Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};

inline Complex global_phase(const PauliString& p) {
    return kPhases[std::popcount(p.x & p.z) & 3];
}

inline int parity(std::uint32_t v) { return std::popcount(v) & 1; }

}  // namespace

PauliString pauli_string_from_index(int n_qubits, std::uint64_t index) {
    PauliString p;
    for (int site = n_qubits - 1; site >= 0; --site) {
        const auto code = static_cast<std::uint32_t>(index & 3);
        index >>= 2;
        const std::uint32_t bit = 1u << (n_qubits - 1 - site);
        if (code == 1 || code == 2) p.x |= bit;
        if (code == 2 || code == 3) p.z |= bit;
    }
    return p;
}

std::uint64_t pauli_index(int n_qubits, const PauliString& p) {
    std::uint64_t index = 0;
    for (int site = 0; site < n_qubits; ++site) {
        const std::uint32_t bit = 1u << (n_qubits - 1 - site);
        const bool has_x = p.x & bit;
        const bool has_z = p.z & bit;
        std::uint64_t code = 0;
        if (has_x && has_z) code = 2;
        else if (has_x) code = 1;
        else if (has_z) code = 3;
        index = index * 4 + code;
    }
    return index;
}

ComplexMatrix pauli_dense(int n_qubits, const PauliString& p) {
    const Index d = dim_for_qubits(n_qubits);
    const Complex phase = global_phase(p);
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (Index col = 0; col < d; ++col) {
        const auto k = static_cast<std::uint32_t>(col);
        const double sign = parity(p.z & k) ? -1.0 : 1.0;
        m(static_cast<Index>(k ^ p.x), col) = sign * phase;
    }
    return m;
}

Complex pauli_trace_product(int n_qubits, const PauliString& p, const ComplexMatrix& m) {
    const Index d = dim_for_qubits(n_qubits);
    Complex acc(0, 0);
    for (Index col = 0; col < d; ++col) {
        const auto k = static_cast<std::uint32_t>(col);
        const double sign = parity(p.z & k) ? -1.0 : 1.0;
        acc += sign * m(col, static_cast<Index>(k ^ p.x));
    }
    return global_phase(p) * acc;
}

RealVector pauli_coords(int n_qubits, const ComplexMatrix& m) {
    const Index d = dim_for_qubits(n_qubits);
    const Index count = d * d;
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    RealVector coords(count);
    for (Index idx = 0; idx < count; ++idx) {
        const PauliString p = pauli_string_from_index(n_qubits, static_cast<std::uint64_t>(idx));
        coords[idx] = pauli_trace_product(n_qubits, p, m).real() * norm;
    }
    return coords;
}

ComplexMatrix matrix_from_pauli_coords(int n_qubits, const RealVector& coords) {
    const Index d = dim_for_qubits(n_qubits);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (Index idx = 0; idx < coords.size(); ++idx) {
        const double c = coords[idx];
        if (c == 0.0) continue;
        const PauliString p = pauli_string_from_index(n_qubits, static_cast<std::uint64_t>(idx));
        const Complex scale = c * norm * global_phase(p);
        for (Index col = 0; col < d; ++col) {
            const auto k = static_cast<std::uint32_t>(col);
            const double sign = parity(p.z & k) ? -1.0 : 1.0;
            m(static_cast<Index>(k ^ p.x), col) += sign * scale;
        }
    }
    return m;
}

}  // namespace symtomo
