// Target-state generation, measurement set construction and noisy
// measurement simulation (binomial photonic model with detector-response
// calibration, and additive Gaussian noise on expectation values).
#pragma once

#include <symtomo/rng.hpp>
#include <symtomo/symmetry.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace symtomo {

enum class EffectKind { projector, observable };

struct MeasurementSet {
    std::vector<HermitianOp> effects;
    EffectKind kind = EffectKind::projector;
    std::vector<std::string> labels;

    Index size() const { return static_cast<Index>(effects.size()); }
};

// Projector-kind sets must satisfy ||E^2 - E||_F <= psd_tol and E >= -psd_tol.
void validate_measurement_set(const MeasurementSet& set, const NumericPolicy& policy = {});

enum class NoiseKind { none, binomial_photonic, gaussian };

struct NoiseModel {
    NoiseKind kind = NoiseKind::none;
    double mu = 0.0;         // mean photon number per pulse
    double lambda_dc = 0.0;  // dark counts per pulse
    std::int64_t n_trials = 0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

void validate_noise(const NoiseModel& noise);

enum class ValueKind { frequency, expectation };

struct MeasurementRecord {
    MeasurementSet set;
    std::vector<double> values;
    ValueKind value_kind = ValueKind::frequency;
    NoiseModel noise;
};

// sqrt(p)|0...0> + sqrt(1-p)|1...1>; p = 1/2 is the GHZ state.
DensityMatrix cat_state(int n_qubits, double p);

// rho = G G^dagger / tr(G G^dagger) with G a d x rank matrix of independent
// standard complex Gaussian entries drawn from the seeded stream.
DensityMatrix random_density(int n_qubits, Index rank, std::uint64_t seed);

// Twirl of random_density onto the symmetric subspace of the basis.
DensityMatrix random_symmetric_state(const SymmetricBasis& basis, Index rank, std::uint64_t seed);

// All 4^N tensor products of projectors onto {H, V, D, R}, with
// D = (H + V)/sqrt(2) and R = (H - iV)/sqrt(2), in lexicographic order.
MeasurementSet polarization_projector_pool(int n_qubits);

// One projector per eigenvalue cluster of each basis element (gap tolerance
// degeneracy_tol), deduplicated across elements by Frobenius distance.
MeasurementSet eigenprojector_set(const SymmetricBasis& basis, double degeneracy_tol = 1e-8);

// The basis elements themselves as an observable set.
MeasurementSet direct_observable_set(const SymmetricBasis& basis);

// Exact Born values: frequencies for projector sets, expectations otherwise.
MeasurementRecord simulate_exact(const DensityMatrix& rho, const MeasurementSet& set);

// Photonic counting model: p_det = 1 - exp(-mu p_ideal - lambda_dc), counts
// drawn as Binomial(n_trials, p_det) from the per-effect stream seed ^ index,
// then calibrated back through the inverse response
// f_cal = -(log(1 - f) + lambda_dc) / mu, clamped to [0, 1].
MeasurementRecord simulate_binomial(const DensityMatrix& rho, const MeasurementSet& set,
                                    const NoiseModel& noise);

// value_i = tr(E_i rho) + eps_i with eps_i ~ N(0, sigma^2) from the
// per-effect stream.
MeasurementRecord simulate_gaussian(const DensityMatrix& rho, const MeasurementSet& set,
                                    const NoiseModel& noise);

// Dispatches on noise.kind.
MeasurementRecord simulate(const DensityMatrix& rho, const MeasurementSet& set,
                           const NoiseModel& noise);

}  // namespace symtomo
