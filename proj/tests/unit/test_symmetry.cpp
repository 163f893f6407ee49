#include <symtomo/rng.hpp>
#include <symtomo/statesim.hpp>
#include <symtomo/symmetry.hpp>

#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace symtomo;

namespace {

ComplexMatrix sigma(int code) {
    ComplexMatrix m(2, 2);
    switch (code) {
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0); break;
        case 3: m << 1, 0, 0, -1; break;
        default: m = ComplexMatrix::Identity(2, 2);
    }
    return m;
}

ComplexMatrix swap_gate() {
    ComplexMatrix u = ComplexMatrix::Zero(4, 4);
    u(0, 0) = 1;
    u(1, 2) = 1;
    u(2, 1) = 1;
    u(3, 3) = 1;
    return u;
}

// Residual of v outside the span of the basis elements.
double outside_span(const HermitianOp& v, const SymmetricBasis& basis) {
    ComplexMatrix residual = v.mat();
    for (const HermitianOp& s : basis.elements) {
        residual -= hs_inner(s, v) * s.mat();
    }
    return residual.norm();
}

}  // namespace

TEST_SUITE("symmetry") {

TEST_CASE("validate_spec rejects malformed generators") {
    SymmetrySpec lie;
    lie.kind = SymmetryKind::lie;
    lie.n_qubits = 1;
    ComplexMatrix notherm(2, 2);
    notherm << 0, 1, 2, 0;
    lie.generators = {notherm};
    CHECK_THROWS_AS(validate_spec(lie), ValidationError);

    SymmetrySpec finite;
    finite.kind = SymmetryKind::finite;
    finite.n_qubits = 1;
    finite.generators = {sigma(3) * 2.0};  // not unitary
    CHECK_THROWS_AS(validate_spec(finite), ValidationError);

    SymmetrySpec wrongdim;
    wrongdim.kind = SymmetryKind::lie;
    wrongdim.n_qubits = 2;
    wrongdim.generators = {sigma(3)};
    CHECK_THROWS_AS(validate_spec(wrongdim), Error);
}

TEST_CASE("lie constraint set on one qubit matches hand commutators") {
    SymmetrySpec spec;
    spec.kind = SymmetryKind::lie;
    spec.n_qubits = 1;
    spec.label = "sz";
    spec.generators = {sigma(3)};
    const auto basis = pauli_basis(1);
    const auto constraints = lie_constraint_set(spec, basis);
    REQUIRE(constraints.size() == 4);
    for (std::size_t j = 0; j < 4; ++j) {
        const HermitianOp expected = commutator_i(HermitianOp(sigma(3)), basis[j]);
        CHECK((constraints[j].mat() - expected.mat()).norm() <= 1e-14);
    }
    // I and sz commute with sz, x and y do not.
    CHECK(constraints[0].mat().norm() == doctest::Approx(0.0));
    CHECK(constraints[3].mat().norm() == doctest::Approx(0.0));
    CHECK(constraints[1].mat().norm() > 0.5);
    CHECK(constraints[2].mat().norm() > 0.5);
}

TEST_CASE("finite generators split into Hermitian constraint pairs") {
    SymmetrySpec spec;
    spec.kind = SymmetryKind::finite;
    spec.n_qubits = 2;
    spec.generators = {swap_gate()};
    const SymmetrySpec herm = finite_to_hermitian_constraints(spec);
    CHECK(herm.kind == SymmetryKind::lie);
    REQUIRE(herm.generators.size() == 2);
    CHECK((herm.generators[0] - swap_gate()).norm() <= 1e-14);  // (U+U^dag)/2 = SWAP
    CHECK(herm.generators[1].norm() <= 1e-14);                  // (U-U^dag)/2i = 0

    SymmetrySpec phase;
    phase.kind = SymmetryKind::finite;
    phase.n_qubits = 1;
    ComplexMatrix s = ComplexMatrix::Zero(2, 2);
    s(0, 0) = 1;
    s(1, 1) = Complex(0, 1);
    phase.generators = {s};
    const SymmetrySpec hphase = finite_to_hermitian_constraints(phase);
    ComplexMatrix re = ComplexMatrix::Zero(2, 2), im = ComplexMatrix::Zero(2, 2);
    re(0, 0) = 1;
    im(1, 1) = 1;
    CHECK((hphase.generators[0] - re).norm() <= 1e-14);
    CHECK((hphase.generators[1] - im).norm() <= 1e-14);
}

TEST_CASE("trivial symmetry spans the whole operator space") {
    SymmetrySpec spec;
    spec.kind = SymmetryKind::lie;
    spec.n_qubits = 2;
    spec.label = "trivial";
    spec.generators = {ComplexMatrix::Identity(4, 4)};
    const SymmetricBasis basis = symmetric_basis(spec);
    CHECK(basis.dim() == 16);
    CHECK(basis.complement_dim == 0);
}

TEST_CASE("catalog dimensions at small N") {
    CHECK(symmetric_basis(catalog_symmetry("permutation", 2)).dim() == 10);
    CHECK(symmetric_basis(catalog_symmetry("permutation", 3)).dim() == 20);
    CHECK(symmetric_basis(catalog_symmetry("werner", 2)).dim() == 2);
    CHECK(symmetric_basis(catalog_symmetry("werner", 3)).dim() == 5);
    CHECK(symmetric_basis(catalog_symmetry("global_rotation_z", 2)).dim() == 6);
    CHECK(symmetric_basis(catalog_symmetry("global_rotation_z", 3)).dim() == 20);
    CHECK(symmetric_basis(catalog_symmetry("individual_rotation_z", 3)).dim() == 8);
}

TEST_CASE("basis elements are orthonormal, commuting, and led by the identity") {
    for (const std::string& name : catalog_names()) {
        const SymmetrySpec spec = catalog_symmetry(name, 2);
        const SymmetricBasis basis = symmetric_basis(spec);
        CAPTURE(name);
        CHECK(basis.dim() + basis.complement_dim == 16);
        const Index d = 4;
        CHECK((basis.elements[0].mat() - ComplexMatrix::Identity(d, d) / 2.0).norm() <= 1e-12);
        for (std::size_t i = 0; i < basis.elements.size(); ++i) {
            for (std::size_t j = i; j < basis.elements.size(); ++j) {
                const double expected = i == j ? 1.0 : 0.0;
                CHECK(std::abs(hs_inner(basis.elements[i], basis.elements[j]) - expected) <=
                      1e-10);
            }
        }
        const SymmetrySpec herm = spec.kind == SymmetryKind::finite
                                      ? finite_to_hermitian_constraints(spec)
                                      : spec;
        for (const HermitianOp& s : basis.elements) {
            for (const ComplexMatrix& q : herm.generators) {
                CHECK((s.mat() * q - q * s.mat()).norm() <= 1e-8);
            }
        }
    }
}

TEST_CASE("individual z rotations leave exactly the diagonal algebra") {
    const SymmetricBasis basis = symmetric_basis(catalog_symmetry("individual_rotation_z", 3));
    CHECK(basis.dim() == 8);
    for (const HermitianOp& s : basis.elements) {
        const ComplexMatrix offdiag = s.mat() - ComplexMatrix(s.mat().diagonal().asDiagonal());
        CHECK(offdiag.norm() <= 1e-12);
    }
}

TEST_CASE("werner and global rotation generators match hand matrices at two qubits") {
    const SymmetrySpec w = werner_generators(2);
    REQUIRE(w.generators.size() == 4);
    ComplexMatrix jz = kron(sigma(3), sigma(0)) + kron(sigma(0), sigma(3));
    CHECK((w.generators[3] - jz).norm() <= 1e-14);

    const SymmetrySpec g = global_rotation_generator(2);
    REQUIRE(g.generators.size() == 1);
    CHECK((g.generators[0] - jz).norm() <= 1e-14);
}

TEST_CASE("permutation group closure at three qubits has six elements") {
    const SymmetrySpec spec = perm_generators(3);
    REQUIRE(spec.kind == SymmetryKind::finite);
    const auto closure = oracles::finite_closure(spec);
    CHECK(closure.size() == 6);
    // Every closure element fixes every basis operator.
    const SymmetricBasis basis = symmetric_basis(spec);
    for (const ComplexMatrix& u : closure) {
        for (const HermitianOp& s : basis.elements) {
            CHECK((u * s.mat() * u.adjoint() - s.mat()).norm() <= 1e-10);
        }
    }
}

TEST_CASE("commutant dimension agrees with the nullspace oracle at two qubits") {
    for (const std::string& name : catalog_names()) {
        const SymmetrySpec spec = catalog_symmetry(name, 2);
        CAPTURE(name);
        CHECK(symmetric_basis(spec).dim() == oracles::commutant_dim(spec));
    }
}

TEST_CASE("projection matches the group-average twirl for permutations") {
    const SymmetrySpec spec = perm_generators(2);
    const SymmetricBasis basis = symmetric_basis(spec);
    const auto closure = oracles::finite_closure(spec);
    REQUIRE(closure.size() == 2);
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const DensityMatrix rho = random_density(2, 4, seed);
        ComplexMatrix avg = ComplexMatrix::Zero(4, 4);
        for (const ComplexMatrix& u : closure) avg += u * rho.mat() * u.adjoint();
        avg /= static_cast<double>(closure.size());
        const DensityMatrix projected = project_symmetric(rho, basis);
        CHECK((projected.mat() - avg).norm() <= 1e-10);
    }
}

TEST_CASE("projection matches the constraint-nullspace oracle for Lie catalogs") {
    for (const std::string& name : {std::string("werner"), std::string("global_rotation_z"),
                                    std::string("individual_rotation_z")}) {
        const SymmetrySpec spec = catalog_symmetry(name, 2);
        const SymmetricBasis basis = symmetric_basis(spec);
        CAPTURE(name);
        const DensityMatrix rho = random_density(2, 4, 17);
        const DensityMatrix projected = project_symmetric(rho, basis);
        const ComplexMatrix expected = oracles::project_oracle(rho.mat(), spec);
        CHECK((projected.mat() - expected).norm() <= 1e-9);
    }
}

TEST_CASE("projection is idempotent, trace preserving, and positivity preserving") {
    const SymmetricBasis basis = symmetric_basis(catalog_symmetry("permutation", 3));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const DensityMatrix rho = random_density(3, 8, 100 + seed);
        const DensityMatrix once = project_symmetric(rho, basis);
        const DensityMatrix twice = project_symmetric(once, basis);
        CHECK((once.mat() - twice.mat()).norm() <= 1e-10);
        CHECK(once.mat().trace().real() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(min_eigenvalue(once.op()) >= -1e-10);
    }
}

TEST_CASE("scaling the generators does not move the subspace") {
    SymmetrySpec spec = catalog_symmetry("global_rotation_z", 2);
    SymmetrySpec scaled = spec;
    for (ComplexMatrix& g : scaled.generators) g *= 2.0;
    const SymmetricBasis a = symmetric_basis(spec);
    const SymmetricBasis b = symmetric_basis(scaled);
    REQUIRE(a.dim() == b.dim());
    for (const HermitianOp& s : a.elements) CHECK(outside_span(s, b) <= 1e-9);
    for (const HermitianOp& s : b.elements) CHECK(outside_span(s, a) <= 1e-9);
}

TEST_CASE("basis construction is bitwise deterministic") {
    const SymmetricBasis a = symmetric_basis(catalog_symmetry("permutation", 3));
    const SymmetricBasis b = symmetric_basis(catalog_symmetry("permutation", 3));
    REQUIRE(a.dim() == b.dim());
    CHECK(a.coords == b.coords);
    for (std::size_t i = 0; i < a.elements.size(); ++i) {
        CHECK(a.elements[i].mat() == b.elements[i].mat());
    }
}

TEST_CASE("unknown catalog names list the available entries") {
    CHECK_THROWS_WITH_AS(catalog_symmetry("hexagonal", 2),
                         doctest::Contains("permutation"), ValidationError);
}

}  // TEST_SUITE
