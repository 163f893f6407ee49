#include <symtomo/matlin.hpp>
#include <symtomo/pauli.hpp>
#include <symtomo/rng.hpp>
#include <symtomo/statesim.hpp>

#include <doctest.h>

#include <cmath>

using namespace symtomo;

namespace {

ComplexMatrix sigma_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix sigma_y() {
    ComplexMatrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

ComplexMatrix sigma_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

ComplexMatrix random_hermitian(Index d, std::uint64_t seed) {
    Xoshiro256StarStar gen(seed);
    ComplexMatrix a(d, d);
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) a(i, j) = complex_gaussian(gen);
    }
    return ComplexMatrix((a + a.adjoint()) / 2.0);
}

}  // namespace

TEST_SUITE("matlin") {

TEST_CASE("pauli basis is orthonormal and starts at the normalized identity") {
    for (int n : {1, 2}) {
        const auto basis = pauli_basis(n);
        const Index d = dim_for_qubits(n);
        REQUIRE(basis.size() == static_cast<std::size_t>(d * d));
        CHECK((basis[0].mat() - ComplexMatrix::Identity(d, d) / std::sqrt(double(d))).norm() ==
              doctest::Approx(0.0).epsilon(1e-14));
        for (std::size_t i = 0; i < basis.size(); ++i) {
            for (std::size_t j = i; j < basis.size(); ++j) {
                const double expected = i == j ? 1.0 : 0.0;
                CHECK(hs_inner(basis[i], basis[j]) == doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("hs_inner of the normalized identity with the bare identity is sqrt(8) at three qubits") {
    const auto basis = pauli_basis(3);
    const HermitianOp identity(ComplexMatrix::Identity(8, 8));
    CHECK(hs_inner(basis[0], identity) == doctest::Approx(std::sqrt(8.0)).epsilon(1e-12));
}

TEST_CASE("hs_inner is a real inner product on Hermitian matrices") {
    const HermitianOp a(random_hermitian(4, 11));
    const HermitianOp b(random_hermitian(4, 12));
    CHECK(hs_inner(a, b) == doctest::Approx(hs_inner(b, a)).epsilon(1e-12));
    CHECK(hs_inner(a, a) > 0.0);
    const HermitianOp sum(a.mat() + b.mat());
    CHECK(hs_inner(sum, b) ==
          doctest::Approx(hs_inner(a, b) + hs_inner(b, b)).epsilon(1e-10));
}

TEST_CASE("kron reproduces hand-computed tensor products") {
    const ComplexMatrix zi = kron(sigma_z(), ComplexMatrix::Identity(2, 2));
    RealVector diag(4);
    diag << 1, 1, -1, -1;
    for (Index i = 0; i < 4; ++i) CHECK(zi(i, i).real() == doctest::Approx(diag[i]));
    CHECK((zi - ComplexMatrix(zi.diagonal().asDiagonal())).norm() == doctest::Approx(0.0));

    const ComplexMatrix a = random_hermitian(2, 21);
    const ComplexMatrix b = random_hermitian(3, 22);
    CHECK(kron(a, b).trace().real() ==
          doctest::Approx(a.trace().real() * b.trace().real()).epsilon(1e-12));
    CHECK(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2))
              .isApprox(ComplexMatrix::Identity(4, 4)));
}

TEST_CASE("commutator_i matches the su(2) relations and stays Hermitian") {
    const HermitianOp x(sigma_x()), y(sigma_y()), z(sigma_z());
    CHECK(commutator_i(z, z).mat().norm() == doctest::Approx(0.0));
    // i[sz, sx] = -2 sy
    CHECK((commutator_i(z, x).mat() + 2.0 * sigma_y()).norm() ==
          doctest::Approx(0.0).epsilon(1e-14));
    const HermitianOp a(random_hermitian(4, 31));
    const HermitianOp b(random_hermitian(4, 32));
    const ComplexMatrix c = commutator_i(a, b).mat();
    CHECK((c - c.adjoint()).norm() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK((commutator_i(a, b).mat() + commutator_i(b, a).mat()).norm() ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.trace().real() == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("eig_hermitian returns a descending spectral decomposition") {
    const Spectrum zs = eig_hermitian(HermitianOp(sigma_z()));
    CHECK(zs.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(zs.eigenvalues[1] == doctest::Approx(-1.0));

    const HermitianOp a(random_hermitian(8, 41));
    const Spectrum s = eig_hermitian(a);
    for (Index i = 1; i < s.eigenvalues.size(); ++i) {
        CHECK(s.eigenvalues[i] <= s.eigenvalues[i - 1] + 1e-12);
    }
    const ComplexMatrix rebuilt =
        s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.adjoint();
    CHECK((rebuilt - a.mat()).norm() <= 1e-9);
    CHECK((s.eigenvectors.adjoint() * s.eigenvectors - ComplexMatrix::Identity(8, 8)).norm() <=
          1e-12);
}

TEST_CASE("fidelity endpoints and invariances") {
    ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    ComplexMatrix p1 = ComplexMatrix::Zero(2, 2);
    p1(1, 1) = 1.0;
    const DensityMatrix rho0{HermitianOp(p0)};
    const DensityMatrix rho1{HermitianOp(p1)};
    const DensityMatrix mixed{HermitianOp(ComplexMatrix::Identity(2, 2) / 2.0)};
    CHECK(fidelity(rho0, rho0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(rho0, rho1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fidelity(rho0, mixed) == doctest::Approx(0.5).epsilon(1e-10));

    const DensityMatrix a = random_density(2, 2, 51);
    const DensityMatrix b = random_density(2, 4, 52);
    const double fab = fidelity(a, b);
    CHECK(fab == doctest::Approx(fidelity(b, a)).epsilon(1e-9));
    CHECK(fab >= 0.0);
    CHECK(fab <= 1.0 + 1e-12);
    CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("is_psd separates spectra near the tolerance") {
    CHECK(is_psd(HermitianOp(ComplexMatrix::Identity(4, 4) / 4.0), 1e-9));
    CHECK_FALSE(is_psd(HermitianOp(sigma_z()), 1e-9));
    ComplexMatrix shifted = ComplexMatrix::Zero(2, 2);
    shifted(0, 0) = 1.0;
    shifted -= 1e-6 * ComplexMatrix::Identity(2, 2);
    CHECK_FALSE(is_psd(HermitianOp(shifted), 1e-9));
    CHECK(is_psd(HermitianOp(shifted), 1e-5));
}

TEST_CASE("constructors validate their inputs") {
    ComplexMatrix bad(2, 2);
    bad << 0, 1, 2, 0;
    CHECK_THROWS_AS(HermitianOp{bad}, ValidationError);

    CHECK_THROWS_AS(DensityMatrix{HermitianOp(sigma_z())}, ValidationError);
    CHECK_THROWS_AS(DensityMatrix{HermitianOp(ComplexMatrix::Identity(2, 2))}, ValidationError);
}

}  // TEST_SUITE
