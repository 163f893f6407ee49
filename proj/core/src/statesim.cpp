#include <symtomo/statesim.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace symtomo {

namespace {

constexpr double kDedupTol = 1e-8;

double born_value(const HermitianOp& effect, const DensityMatrix& rho) {
    if (effect.dim() != rho.dim()) {
        throw DimensionError("effect/state dimension mismatch");
    }
    return effect.mat().cwiseProduct(rho.mat().conjugate()).sum().real();
}

}  // namespace

void validate_measurement_set(const MeasurementSet& set, const NumericPolicy& policy) {
    if (set.effects.empty()) {
        throw ValidationError("measurement set is empty");
    }
    if (!set.labels.empty() && set.labels.size() != set.effects.size()) {
        throw ValidationError("measurement set labels do not match effects");
    }
    const Index d = set.effects.front().dim();
    for (std::size_t i = 0; i < set.effects.size(); ++i) {
        const HermitianOp& e = set.effects[i];
        if (e.dim() != d) {
            throw DimensionError("measurement set effects have mixed dimensions");
        }
        if (set.kind == EffectKind::projector) {
            const double idem = (e.mat() * e.mat() - e.mat()).norm();
            if (idem > policy.psd_tol) {
                std::ostringstream msg;
                msg << "effect " << i << " is not a projector: ||E^2 - E|| = " << idem;
                throw ValidationError(msg.str());
            }
            if (!is_psd(e, policy.psd_tol)) {
                std::ostringstream msg;
                msg << "effect " << i << " is not positive semidefinite";
                throw ValidationError(msg.str());
            }
        }
    }
}

void validate_noise(const NoiseModel& noise) {
    switch (noise.kind) {
        case NoiseKind::none:
            return;
        case NoiseKind::binomial_photonic:
            if (noise.mu <= 0.0) throw ValidationError("binomial noise requires mu > 0");
            if (noise.lambda_dc < 0.0) throw ValidationError("lambda_dc must be >= 0");
            if (noise.n_trials < 1) throw ValidationError("n_trials must be >= 1");
            return;
        case NoiseKind::gaussian:
            if (noise.sigma < 0.0) throw ValidationError("gaussian noise requires sigma >= 0");
            return;
    }
    throw ValidationError("unknown noise kind");
}

DensityMatrix cat_state(int n_qubits, double p) {
    if (n_qubits < 1 || n_qubits > 6) {
        throw DimensionError("cat_state supports 1 <= n_qubits <= 6");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError("cat_state requires p in [0, 1]");
    }
    const Index d = dim_for_qubits(n_qubits);
    ComplexVector psi = ComplexVector::Zero(d);
    psi[0] = std::sqrt(p);
    psi[d - 1] = std::sqrt(1.0 - p);
    return DensityMatrix(HermitianOp(psi * psi.adjoint()));
}

DensityMatrix random_density(int n_qubits, Index rank, std::uint64_t seed) {
    if (n_qubits < 1 || n_qubits > 6) {
        throw DimensionError("random_density supports 1 <= n_qubits <= 6");
    }
    const Index d = dim_for_qubits(n_qubits);
    if (rank < 1 || rank > d) {
        throw DimensionError("random_density requires 1 <= rank <= 2^N");
    }
    Xoshiro256StarStar gen(seed);
    ComplexMatrix g(d, rank);
    for (Index col = 0; col < rank; ++col) {
        for (Index row = 0; row < d; ++row) {
            g(row, col) = complex_gaussian(gen);
        }
    }
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = ((rho + rho.adjoint()) / 2.0).eval();
    return DensityMatrix(HermitianOp(std::move(rho)));
}

DensityMatrix random_symmetric_state(const SymmetricBasis& basis, Index rank, std::uint64_t seed) {
    return project_symmetric(random_density(basis.n_qubits, rank, seed), basis);
}

MeasurementSet polarization_projector_pool(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 6) {
        throw DimensionError("polarization_projector_pool supports 1 <= n_qubits <= 6");
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    ComplexVector kets[4] = {ComplexVector(2), ComplexVector(2), ComplexVector(2),
                             ComplexVector(2)};
    kets[0] << 1, 0;
    kets[1] << 0, 1;
    kets[2] << inv_sqrt2, inv_sqrt2;
    kets[3] << inv_sqrt2, Complex(0, -inv_sqrt2);
    const char names[4] = {'H', 'V', 'D', 'R'};
    ComplexMatrix projectors[4];
    for (int k = 0; k < 4; ++k) projectors[k] = kets[k] * kets[k].adjoint();

    MeasurementSet pool;
    pool.kind = EffectKind::projector;
    const Index count = Index{1} << (2 * n_qubits);
    pool.effects.reserve(static_cast<std::size_t>(count));
    pool.labels.reserve(static_cast<std::size_t>(count));
    for (Index idx = 0; idx < count; ++idx) {
        ComplexMatrix effect = ComplexMatrix::Identity(1, 1);
        std::string label;
        for (int site = 0; site < n_qubits; ++site) {
            const int code = static_cast<int>((idx >> (2 * (n_qubits - 1 - site))) & 3);
            effect = kron(effect, projectors[code]);
            label.push_back(names[code]);
        }
        pool.effects.emplace_back(std::move(effect));
        pool.labels.push_back(std::move(label));
    }
    return pool;
}

MeasurementSet eigenprojector_set(const SymmetricBasis& basis, double degeneracy_tol) {
    MeasurementSet set;
    set.kind = EffectKind::projector;
    for (std::size_t i = 0; i < basis.elements.size(); ++i) {
        const Spectrum spec = eig_hermitian(basis.elements[i]);
        const Index d = spec.eigenvalues.size();
        Index begin = 0;
        int cluster = 0;
        while (begin < d) {
            Index end = begin + 1;
            while (end < d && spec.eigenvalues[end - 1] - spec.eigenvalues[end] <= degeneracy_tol) {
                ++end;
            }
            const auto block = spec.eigenvectors.middleCols(begin, end - begin);
            ComplexMatrix projector = block * block.adjoint();
            const bool duplicate =
                std::any_of(set.effects.begin(), set.effects.end(), [&](const HermitianOp& kept) {
                    return (kept.mat() - projector).norm() < kDedupTol;
                });
            if (!duplicate) {
                std::ostringstream label;
                label << "S" << (i + 1) << ".P" << (cluster + 1);
                set.effects.emplace_back(std::move(projector));
                set.labels.push_back(label.str());
            }
            ++cluster;
            begin = end;
        }
    }
    return set;
}

MeasurementSet direct_observable_set(const SymmetricBasis& basis) {
    MeasurementSet set;
    set.kind = EffectKind::observable;
    set.effects = basis.elements;
    for (std::size_t i = 0; i < basis.elements.size(); ++i) {
        set.labels.push_back("S" + std::to_string(i + 1));
    }
    return set;
}

MeasurementRecord simulate_exact(const DensityMatrix& rho, const MeasurementSet& set) {
    MeasurementRecord record;
    record.set = set;
    record.value_kind =
        set.kind == EffectKind::projector ? ValueKind::frequency : ValueKind::expectation;
    record.values.reserve(set.effects.size());
    for (const HermitianOp& effect : set.effects) {
        double value = born_value(effect, rho);
        if (set.kind == EffectKind::projector) value = std::clamp(value, 0.0, 1.0);
        record.values.push_back(value);
    }
    return record;
}

MeasurementRecord simulate_binomial(const DensityMatrix& rho, const MeasurementSet& set,
                                    const NoiseModel& noise) {
    if (noise.kind != NoiseKind::binomial_photonic) {
        throw ValidationError("simulate_binomial requires binomial_photonic noise");
    }
    if (set.kind != EffectKind::projector) {
        throw ValidationError("simulate_binomial requires a projector measurement set");
    }
    validate_noise(noise);
    MeasurementRecord record;
    record.set = set;
    record.value_kind = ValueKind::frequency;
    record.noise = noise;
    record.values.reserve(set.effects.size());
    const auto n_trials = noise.n_trials;
    for (std::size_t i = 0; i < set.effects.size(); ++i) {
        const double p_ideal = std::clamp(born_value(set.effects[i], rho), 0.0, 1.0);
        const double p_det = 1.0 - std::exp(-noise.mu * p_ideal - noise.lambda_dc);
        Xoshiro256StarStar gen = substream(noise.seed, static_cast<std::uint64_t>(i));
        const auto hits = binomial(gen, n_trials, p_det);
        double f = static_cast<double>(hits) / static_cast<double>(n_trials);
        if (f >= 1.0) f = 1.0 - 1.0 / (2.0 * static_cast<double>(n_trials));
        const double calibrated = -(std::log1p(-f) + noise.lambda_dc) / noise.mu;
        record.values.push_back(std::clamp(calibrated, 0.0, 1.0));
    }
    return record;
}

MeasurementRecord simulate_gaussian(const DensityMatrix& rho, const MeasurementSet& set,
                                    const NoiseModel& noise) {
    if (noise.kind != NoiseKind::gaussian) {
        throw ValidationError("simulate_gaussian requires gaussian noise");
    }
    if (set.kind != EffectKind::observable) {
        throw ValidationError("simulate_gaussian requires an observable measurement set");
    }
    validate_noise(noise);
    MeasurementRecord record;
    record.set = set;
    record.value_kind = ValueKind::expectation;
    record.noise = noise;
    record.values.reserve(set.effects.size());
    for (std::size_t i = 0; i < set.effects.size(); ++i) {
        Xoshiro256StarStar gen = substream(noise.seed, static_cast<std::uint64_t>(i));
        record.values.push_back(born_value(set.effects[i], rho) + noise.sigma * gaussian(gen));
    }
    return record;
}

MeasurementRecord simulate(const DensityMatrix& rho, const MeasurementSet& set,
                           const NoiseModel& noise) {
    switch (noise.kind) {
        case NoiseKind::none: {
            MeasurementRecord record = simulate_exact(rho, set);
            record.noise = noise;
            return record;
        }
        case NoiseKind::binomial_photonic:
            return simulate_binomial(rho, set, noise);
        case NoiseKind::gaussian:
            return simulate_gaussian(rho, set, noise);
    }
    throw ValidationError("unknown noise kind");
}

}  // namespace symtomo
