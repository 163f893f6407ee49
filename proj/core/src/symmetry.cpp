#include <symtomo/symmetry.hpp>

#include <symtomo/pauli.hpp>

#include <cstdint>
#include <sstream>
#include <utility>

namespace symtomo {

namespace {

constexpr double kUnitaryTol = 1e-10;

// Incremental modified Gram-Schmidt with a second orthogonalization pass.
// Candidates are accepted when their residual norm stays above rank_tol
// relative to their pre-projection norm.
class Orthogonalizer {
  public:
    explicit Orthogonalizer(Index n) : q_(n, n), used_(0) {}

    bool offer(RealVector v, double rank_tol) {
        const double pre = v.norm();
        if (pre == 0.0) return false;
        for (int pass = 0; pass < 2; ++pass) {
            if (used_ > 0) {
                const auto q = q_.leftCols(used_);
                v -= q * (q.transpose() * v);
            }
        }
        const double post = v.norm();
        if (post <= rank_tol * pre) return false;
        q_.col(used_++) = v / post;
        return true;
    }

    Index size() const { return used_; }
    RealVector last() const { return q_.col(used_ - 1); }

  private:
    RealMatrix q_;
    Index used_;
};

ComplexMatrix site_pauli(int n_qubits, int site, int code) {
    PauliString p;
    const std::uint32_t bit = 1u << (n_qubits - 1 - site);
    if (code == 1 || code == 2) p.x |= bit;
    if (code == 2 || code == 3) p.z |= bit;
    return pauli_dense(n_qubits, p);
}

ComplexMatrix transposition(int n_qubits, int site_a, int site_b) {
    const Index d = dim_for_qubits(n_qubits);
    const std::uint32_t bit_a = 1u << (n_qubits - 1 - site_a);
    const std::uint32_t bit_b = 1u << (n_qubits - 1 - site_b);
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (Index k = 0; k < d; ++k) {
        const auto u = static_cast<std::uint32_t>(k);
        std::uint32_t image = u;
        if (static_cast<bool>(u & bit_a) != static_cast<bool>(u & bit_b)) {
            image ^= bit_a | bit_b;
        }
        m(static_cast<Index>(image), k) = 1.0;
    }
    return m;
}

}  // namespace

void validate_spec(const SymmetrySpec& spec, const NumericPolicy& policy) {
    if (spec.n_qubits < 1 || spec.n_qubits > 6) {
        throw DimensionError("symmetry spec requires 1 <= n_qubits <= 6");
    }
    const Index d = dim_for_qubits(spec.n_qubits);
    for (std::size_t k = 0; k < spec.generators.size(); ++k) {
        const ComplexMatrix& g = spec.generators[k];
        if (g.rows() != d || g.cols() != d) {
            std::ostringstream msg;
            msg << "generator " << k << " has shape " << g.rows() << "x" << g.cols()
                << ", expected " << d << "x" << d;
            throw DimensionError(msg.str());
        }
        if (spec.kind == SymmetryKind::lie) {
            const double dev = (g - g.adjoint()).cwiseAbs().maxCoeff();
            if (dev > policy.herm_tol) {
                std::ostringstream msg;
                msg << "lie generator " << k << " is not Hermitian (deviation " << dev << ")";
                throw ValidationError(msg.str());
            }
        } else {
            const double dev = (g * g.adjoint() - ComplexMatrix::Identity(d, d)).norm();
            if (dev > kUnitaryTol) {
                std::ostringstream msg;
                msg << "finite generator " << k << " is not unitary (deviation " << dev << ")";
                throw ValidationError(msg.str());
            }
        }
    }
}

std::vector<HermitianOp> lie_constraint_set(const SymmetrySpec& spec,
                                            const std::vector<HermitianOp>& basis) {
    if (spec.kind != SymmetryKind::lie) {
        throw ValidationError("lie_constraint_set requires a lie-kind spec");
    }
    validate_spec(spec);
    const Index d = dim_for_qubits(spec.n_qubits);
    if (static_cast<Index>(basis.size()) != d * d) {
        throw DimensionError("lie_constraint_set expects the full Hermitian basis (4^N elements)");
    }
    std::vector<HermitianOp> constraints;
    constraints.reserve(spec.generators.size() * basis.size());
    for (const ComplexMatrix& g : spec.generators) {
        const HermitianOp q(g);
        for (const HermitianOp& o : basis) {
            if (o.dim() != d) {
                throw DimensionError("basis element dimension mismatch");
            }
            constraints.push_back(commutator_i(q, o));
        }
    }
    return constraints;
}

SymmetrySpec finite_to_hermitian_constraints(const SymmetrySpec& spec) {
    if (spec.kind != SymmetryKind::finite) {
        throw ValidationError("finite_to_hermitian_constraints requires a finite-kind spec");
    }
    validate_spec(spec);
    SymmetrySpec out;
    out.kind = SymmetryKind::lie;
    out.n_qubits = spec.n_qubits;
    out.label = spec.label;
    out.generators.reserve(2 * spec.generators.size());
    for (const ComplexMatrix& u : spec.generators) {
        out.generators.push_back((u + u.adjoint()) / 2.0);
        out.generators.push_back(Complex(0, -0.5) * (u - u.adjoint()));
    }
    return out;
}

SymmetricBasis symmetric_basis(const SymmetrySpec& spec, const NumericPolicy& policy) {
    validate_spec(spec, policy);
    const int n = spec.n_qubits;
    const Index n_coords = dim_for_qubits(n) * dim_for_qubits(n);

    const SymmetrySpec lie_spec =
        spec.kind == SymmetryKind::finite ? finite_to_hermitian_constraints(spec) : spec;
    const std::vector<HermitianOp> basis = pauli_basis(n);
    const std::vector<HermitianOp> constraints = lie_constraint_set(lie_spec, basis);

    Orthogonalizer ortho(n_coords);
    for (const HermitianOp& t : constraints) {
        ortho.offer(pauli_coords(n, t.mat()), policy.rank_tol);
    }
    const Index c = ortho.size();
    const Index r = n_coords - c;

    SymmetricBasis result;
    result.n_qubits = n;
    result.spec = spec;
    result.complement_dim = c;
    result.coords.resize(r, n_coords);

    Index accepted = 0;
    for (Index p = 0; p < n_coords; ++p) {
        RealVector unit = RealVector::Zero(n_coords);
        unit[p] = 1.0;
        if (!ortho.offer(std::move(unit), policy.rank_tol)) continue;
        if (accepted == r) {
            throw NumericalError("symmetric_basis rank inconsistency: more than 4^N - c survivors");
        }
        result.coords.row(accepted++) = ortho.last();
    }
    if (accepted != r) {
        std::ostringstream msg;
        msg << "symmetric_basis rank inconsistency: expected " << r << " survivors, got "
            << accepted;
        throw NumericalError(msg.str());
    }

    result.elements.reserve(static_cast<std::size_t>(r));
    for (Index i = 0; i < r; ++i) {
        result.elements.emplace_back(matrix_from_pauli_coords(n, result.coords.row(i)));
    }
    return result;
}

DensityMatrix project_symmetric(const DensityMatrix& rho, const SymmetricBasis& basis) {
    if (rho.dim() != dim_for_qubits(basis.n_qubits)) {
        throw DimensionError("project_symmetric dimension mismatch");
    }
    const RealVector rho_coords = pauli_coords(basis.n_qubits, rho.mat());
    const RealVector alpha = basis.coords * rho_coords;
    const RealVector projected = basis.coords.transpose() * alpha;
    return DensityMatrix(HermitianOp(matrix_from_pauli_coords(basis.n_qubits, projected)));
}

SymmetrySpec perm_generators(int n_qubits) {
    if (n_qubits < 2) {
        throw DimensionError("perm_generators requires n_qubits >= 2");
    }
    SymmetrySpec spec;
    spec.kind = SymmetryKind::finite;
    spec.n_qubits = n_qubits;
    spec.label = "permutation";
    for (int j = 1; j < n_qubits; ++j) {
        spec.generators.push_back(transposition(n_qubits, 0, j));
    }
    return spec;
}

SymmetrySpec werner_generators(int n_qubits) {
    if (n_qubits < 2) {
        throw DimensionError("werner_generators requires n_qubits >= 2");
    }
    const Index d = dim_for_qubits(n_qubits);
    SymmetrySpec spec;
    spec.kind = SymmetryKind::lie;
    spec.n_qubits = n_qubits;
    spec.label = "werner";
    for (int code = 0; code < 4; ++code) {
        ComplexMatrix g = ComplexMatrix::Zero(d, d);
        for (int site = 0; site < n_qubits; ++site) {
            g += site_pauli(n_qubits, site, code);
        }
        spec.generators.push_back(std::move(g));
    }
    return spec;
}

SymmetrySpec global_rotation_generator(int n_qubits) {
    if (n_qubits < 1) {
        throw DimensionError("global_rotation_generator requires n_qubits >= 1");
    }
    const Index d = dim_for_qubits(n_qubits);
    SymmetrySpec spec;
    spec.kind = SymmetryKind::lie;
    spec.n_qubits = n_qubits;
    spec.label = "global_rotation_z";
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    for (int site = 0; site < n_qubits; ++site) {
        g += site_pauli(n_qubits, site, 3);
    }
    spec.generators.push_back(std::move(g));
    return spec;
}

SymmetrySpec individual_rotation_generators(int n_qubits) {
    if (n_qubits < 1) {
        throw DimensionError("individual_rotation_generators requires n_qubits >= 1");
    }
    SymmetrySpec spec;
    spec.kind = SymmetryKind::lie;
    spec.n_qubits = n_qubits;
    spec.label = "individual_rotation_z";
    for (int site = 0; site < n_qubits; ++site) {
        spec.generators.push_back(site_pauli(n_qubits, site, 3));
    }
    return spec;
}

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = {
        "permutation", "werner", "global_rotation_z", "individual_rotation_z"};
    return names;
}

SymmetrySpec catalog_symmetry(const std::string& name, int n_qubits) {
    if (name == "permutation") return perm_generators(n_qubits);
    if (name == "werner") return werner_generators(n_qubits);
    if (name == "global_rotation_z") return global_rotation_generator(n_qubits);
    if (name == "individual_rotation_z") return individual_rotation_generators(n_qubits);
    std::ostringstream msg;
    msg << "unknown symmetry '" << name << "'; available:";
    for (const std::string& known : catalog_names()) msg << " " << known;
    throw ValidationError(msg.str());
}

}  // namespace symtomo
