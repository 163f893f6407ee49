#include <symtomo/estimate.hpp>
#include <symtomo/statesim.hpp>

#include <doctest.h>

#include <cmath>

using namespace symtomo;

TEST_SUITE("statesim") {

TEST_CASE("cat states interpolate between the basis kets") {
    const DensityMatrix all_zero = cat_state(3, 1.0);
    ComplexMatrix expected = ComplexMatrix::Zero(8, 8);
    expected(0, 0) = 1.0;
    CHECK((all_zero.mat() - expected).norm() <= 1e-14);

    const DensityMatrix ghz = cat_state(2, 0.5);
    ComplexMatrix ref = ComplexMatrix::Zero(4, 4);
    ref(0, 0) = ref(0, 3) = ref(3, 0) = ref(3, 3) = 0.5;
    CHECK((ghz.mat() - ref).norm() <= 1e-14);

    // Pure for every p, and permutation invariant.
    const DensityMatrix c = cat_state(3, 0.3);
    CHECK(hs_inner(c.op(), c.op()) == doctest::Approx(1.0).epsilon(1e-12));
    const SymmetricBasis basis = symmetric_basis(perm_generators(3));
    CHECK((project_symmetric(c, basis).mat() - c.mat()).norm() <= 1e-10);

    CHECK_THROWS_AS(cat_state(3, -0.1), ValidationError);
    CHECK_THROWS_AS(cat_state(3, 1.1), ValidationError);
}

TEST_CASE("random densities have the requested rank profile and are reproducible") {
    const DensityMatrix pure = random_density(2, 1, 5);
    CHECK(hs_inner(pure.op(), pure.op()) == doctest::Approx(1.0).epsilon(1e-10));

    const DensityMatrix full = random_density(2, 4, 5);
    CHECK(min_eigenvalue(full.op()) > 1e-6);

    const DensityMatrix again = random_density(2, 4, 5);
    CHECK(full.mat() == again.mat());
    const DensityMatrix other = random_density(2, 4, 6);
    CHECK((full.mat() - other.mat()).norm() > 1e-3);

    CHECK_THROWS_AS(random_density(2, 0, 5), DimensionError);
    CHECK_THROWS_AS(random_density(2, 5, 5), DimensionError);
}

TEST_CASE("random symmetric states live in the subspace") {
    const SymmetricBasis basis = symmetric_basis(catalog_symmetry("werner", 3));
    const DensityMatrix rho = random_symmetric_state(basis, 8, 9);
    CHECK((project_symmetric(rho, basis).mat() - rho.mat()).norm() <= 1e-10);
    const SymmetrySpec herm = catalog_symmetry("werner", 3);
    for (const ComplexMatrix& q : herm.generators) {
        CHECK((rho.mat() * q - q * rho.mat()).norm() <= 1e-9);
    }
}

TEST_CASE("polarization pool spans one qubit and is labeled") {
    const MeasurementSet pool = polarization_projector_pool(1);
    REQUIRE(pool.size() == 4);
    CHECK(pool.kind == EffectKind::projector);
    REQUIRE(pool.labels.size() == 4);
    CHECK(pool.labels[0] == "H");
    CHECK(pool.labels[1] == "V");
    CHECK(pool.labels[2] == "D");
    CHECK(pool.labels[3] == "R");
    for (const HermitianOp& e : pool.effects) {
        CHECK(e.trace() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((e.mat() * e.mat() - e.mat()).norm() <= 1e-12);
    }
    // <D| sx |D> = 1.
    ComplexMatrix sx(2, 2);
    sx << 0, 1, 1, 0;
    CHECK((pool.effects[2].mat() * sx).trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    validate_measurement_set(pool);

    CHECK(polarization_projector_pool(3).size() == 64);
}

TEST_CASE("eigenprojector sets are deduplicated projector quorums") {
    const SymmetricBasis basis = symmetric_basis(catalog_symmetry("werner", 3));
    const MeasurementSet set = eigenprojector_set(basis);
    CHECK(set.kind == EffectKind::projector);
    validate_measurement_set(set);
    for (Index i = 0; i < set.size(); ++i) {
        for (Index j = i + 1; j < set.size(); ++j) {
            CHECK((set.effects[static_cast<std::size_t>(i)].mat() -
                   set.effects[static_cast<std::size_t>(j)].mat())
                      .norm() > 1e-8);
        }
    }
    // The set determines every coefficient: full column rank design.
    const DesignMatrix design = design_matrix(set, basis);
    CHECK(design.rank == basis.dim());
    // The normalized identity element contributes the identity projector.
    bool has_identity = false;
    for (const HermitianOp& e : set.effects) {
        if ((e.mat() - ComplexMatrix::Identity(8, 8)).norm() <= 1e-10) has_identity = true;
    }
    CHECK(has_identity);
}

TEST_CASE("direct observables are the basis itself") {
    const SymmetricBasis basis = symmetric_basis(catalog_symmetry("werner", 2));
    const MeasurementSet set = direct_observable_set(basis);
    CHECK(set.kind == EffectKind::observable);
    REQUIRE(set.size() == basis.dim());
    for (Index i = 0; i < set.size(); ++i) {
        CHECK((set.effects[static_cast<std::size_t>(i)].mat() -
               basis.elements[static_cast<std::size_t>(i)].mat())
                  .norm() == 0.0);
    }
    CHECK(set.labels[0] == "S1");
}

TEST_CASE("exact simulation reproduces Born values") {
    const DensityMatrix rho = random_density(2, 4, 31);
    const MeasurementSet pool = polarization_projector_pool(2);
    const MeasurementRecord record = simulate_exact(rho, pool);
    CHECK(record.value_kind == ValueKind::frequency);
    REQUIRE(record.values.size() == 16);
    for (Index i = 0; i < pool.size(); ++i) {
        const double born =
            (pool.effects[static_cast<std::size_t>(i)].mat() * rho.mat()).trace().real();
        CHECK(std::abs(record.values[static_cast<std::size_t>(i)] - born) <= 1e-12);
    }

    const SymmetricBasis basis = symmetric_basis(catalog_symmetry("werner", 2));
    const MeasurementRecord obs = simulate_exact(rho, direct_observable_set(basis));
    CHECK(obs.value_kind == ValueKind::expectation);
}

TEST_CASE("photonic simulation is reproducible and effect-local") {
    const DensityMatrix rho = cat_state(2, 0.5);
    const MeasurementSet pool = polarization_projector_pool(2);
    NoiseModel noise;
    noise.kind = NoiseKind::binomial_photonic;
    noise.mu = 0.18;
    noise.lambda_dc = 5e-5;
    noise.n_trials = 500000;
    noise.seed = 77;
    const MeasurementRecord a = simulate_binomial(rho, pool, noise);
    const MeasurementRecord b = simulate(rho, pool, noise);
    CHECK(a.values == b.values);
    for (const double v : a.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }

    noise.seed = 78;
    const MeasurementRecord c = simulate_binomial(rho, pool, noise);
    CHECK(a.values != c.values);

    // Per-effect streams: a truncated set reproduces the same leading values.
    MeasurementSet prefix;
    prefix.kind = pool.kind;
    prefix.effects.assign(pool.effects.begin(), pool.effects.begin() + 4);
    prefix.labels.assign(pool.labels.begin(), pool.labels.begin() + 4);
    noise.seed = 77;
    const MeasurementRecord d = simulate_binomial(rho, prefix, noise);
    for (std::size_t i = 0; i < 4; ++i) CHECK(d.values[i] == a.values[i]);
}

TEST_CASE("calibration inverts the detector response on average") {
    // p_ideal = 0.3 at the photonic operating point; the calibrated mean over
    // many repetitions must sit within three standard errors of the truth.
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 0.3;
    m(1, 1) = 0.7;
    const DensityMatrix rho{HermitianOp(m)};
    MeasurementSet set;
    set.kind = EffectKind::projector;
    ComplexMatrix e0 = ComplexMatrix::Zero(2, 2);
    e0(0, 0) = 1.0;
    set.effects.emplace_back(e0);
    set.labels.push_back("H");

    NoiseModel noise;
    noise.kind = NoiseKind::binomial_photonic;
    noise.mu = 0.18;
    noise.lambda_dc = 5e-5;
    noise.n_trials = 500000;

    const int reps = 1000;
    double sum = 0.0, sumsq = 0.0;
    for (int r = 0; r < reps; ++r) {
        noise.seed = static_cast<std::uint64_t>(r);
        const double v = simulate_binomial(rho, set, noise).values[0];
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / reps;
    const double var = sumsq / reps - mean * mean;
    const double stderr_mean = std::sqrt(var / reps);
    CHECK(std::abs(mean - 0.3) <= 3.0 * stderr_mean + 1e-6);
}

TEST_CASE("saturated detection stays finite through the calibration clamps") {
    const DensityMatrix rho = cat_state(1, 1.0);
    MeasurementSet set;
    set.kind = EffectKind::projector;
    ComplexMatrix e0 = ComplexMatrix::Zero(2, 2);
    e0(0, 0) = 1.0;
    set.effects.emplace_back(e0);

    NoiseModel noise;
    noise.kind = NoiseKind::binomial_photonic;
    noise.mu = 40.0;  // p_det = 1 up to double round-off: every trial clicks
    noise.lambda_dc = 0.0;
    noise.n_trials = 1000;
    noise.seed = 3;
    const double v = simulate_binomial(rho, set, noise).values[0];
    CHECK(std::isfinite(v));
    // f = 1 is clamped to 1 - 1/(2 n_trials) before the log.
    const double expected = std::min(1.0, -std::log(0.5 / 1000.0) / 40.0);
    CHECK(v == doctest::Approx(expected).epsilon(1e-12));

    // With mu near log(2 n_trials) the inverse response reaches the top of
    // its range, so a fully excited state calibrates back to ~1.
    noise.mu = 12.0;
    noise.n_trials = 500000;
    const double w = simulate_binomial(rho, set, noise).values[0];
    CHECK(w >= 0.99);
    CHECK(w <= 1.0);
}

TEST_CASE("gaussian noise reduces to exact values at sigma zero") {
    const SymmetricBasis basis = symmetric_basis(catalog_symmetry("werner", 3));
    const DensityMatrix rho = random_symmetric_state(basis, 4, 21);
    const MeasurementSet set = direct_observable_set(basis);
    NoiseModel noise;
    noise.kind = NoiseKind::gaussian;
    noise.sigma = 0.0;
    noise.seed = 5;
    const MeasurementRecord exact = simulate_exact(rho, set);
    const MeasurementRecord noisy = simulate_gaussian(rho, set, noise);
    for (std::size_t i = 0; i < exact.values.size(); ++i) {
        CHECK(noisy.values[i] == doctest::Approx(exact.values[i]).epsilon(1e-12));
    }

    // At sigma > 0 the added noise averages out across seeds.
    noise.sigma = 0.1;
    double acc = 0.0;
    const int reps = 400;
    for (int r = 0; r < reps; ++r) {
        noise.seed = static_cast<std::uint64_t>(1000 + r);
        acc += simulate_gaussian(rho, set, noise).values[1] - exact.values[1];
    }
    CHECK(std::abs(acc / reps) <= 4.0 * 0.1 / std::sqrt(double(reps)));
}

TEST_CASE("noise and measurement validation reject bad configurations") {
    NoiseModel photonic;
    photonic.kind = NoiseKind::binomial_photonic;
    photonic.mu = 0.0;
    photonic.n_trials = 100;
    CHECK_THROWS_AS(validate_noise(photonic), ValidationError);
    photonic.mu = 0.18;
    photonic.n_trials = 0;
    CHECK_THROWS_AS(validate_noise(photonic), ValidationError);
    photonic.n_trials = 100;
    photonic.lambda_dc = -1.0;
    CHECK_THROWS_AS(validate_noise(photonic), ValidationError);

    NoiseModel gauss;
    gauss.kind = NoiseKind::gaussian;
    gauss.sigma = -0.1;
    CHECK_THROWS_AS(validate_noise(gauss), ValidationError);

    MeasurementSet bad;
    bad.kind = EffectKind::projector;
    ComplexMatrix notproj(2, 2);
    notproj << 2, 0, 0, 0;
    bad.effects.emplace_back(notproj);
    CHECK_THROWS_AS(validate_measurement_set(bad), ValidationError);
}

}  // TEST_SUITE
