// Primal barrier interior-point solver for the tolerance-minimization
// program. All linear equalities (unit trace, rows with f_i = 0) are
// eliminated through an affine parameterization alpha = alpha_p + Z y,
// leaving the smooth barrier
//
//   phi(y, Delta) = sum_ineq Delta_i + sum_unmeasured tr(E_i rho(y))
//     + mu * ( -logdet sigma(y) - sum_i [log s+_i + log s-_i + log Delta_i] )
//
// with s+-_i = Delta_i w_i -+ (t_i - f_i).
//
// A row tr(E rho) = 0 with E PSD forces rho onto a face of the cone, so the
// problem has no strictly feasible point in the full cone and a barrier on
// rho cannot converge. Instead the solver reduces to that face: for rho in
// S_G, tr(E rho) = tr(E~ rho) with E~ the twirl of E into S_G, and because
// the commutant is an algebra the kernel projector Pi of sum E~ lies in S_G
// itself. rho is confined to Pi rho Pi by linear constraints on alpha, the
// barrier acts on the compression sigma = Y^H rho Y (Y an isometry onto the
// kernel), and Pi / rank(Pi) supplies a strictly interior starting state.
// Equality rows whose effect is not PSD cut through the cone instead of
// pinning a face; they are kept as plain affine constraints. Newton steps
// eliminate the diagonal Delta block by a Schur complement.
//
// Measured rows with 0 < |f_i| below a numerical floor and a PSD effect are
// folded into the same face as the f = 0 rows: their tolerance bands are
// narrower than anything the barrier can resolve in double precision (the
// slacks settle near mu w_i and the Newton systems turn numerically
// indefinite), and a state on the extended face meets each such band at
// Delta_i = 1, which is optimal whenever the row conflicts with the
// equalities and within one unit of optimal otherwise. If the extended face
// degenerates the solve retries without the fold.
#include <symtomo/estimate.hpp>

#include <symtomo/pauli.hpp>

#include "estimate_internal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

namespace symtomo {

namespace {

struct RowPartition {
    std::vector<Index> inequality;  // rows carrying a tolerance variable
    std::vector<Index> equality;    // rows with f = 0
    std::vector<Index> unmeasured;  // NaN rows, second objective sum
};

// Thrown internally when folding sub-resolution rows into the face makes the
// problem degenerate; the solve is retried with the fold disabled.
struct RetryWithoutPin {};

RowPartition partition_rows(const std::vector<double>& values, ValueKind kind) {
    RowPartition part;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double f = values[i];
        if (std::isnan(f)) {
            part.unmeasured.push_back(static_cast<Index>(i));
            continue;
        }
        if (std::isinf(f)) {
            throw ValidationError("vqt_estimate requires finite record values");
        }
        if (kind == ValueKind::frequency && (f < 0.0 || f > 1.0)) {
            throw ValidationError("frequency record values must lie in [0, 1]");
        }
        if (f == 0.0) {
            part.equality.push_back(static_cast<Index>(i));
        } else {
            part.inequality.push_back(static_cast<Index>(i));
        }
    }
    return part;
}

RealMatrix gather_rows(const RealMatrix& all, const std::vector<Index>& idx) {
    RealMatrix out(static_cast<Index>(idx.size()), all.cols());
    for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Index>(i)) = all.row(idx[i]);
    return out;
}

// Eigenvalue-based so the PD test agrees with the solver's own
// eigendecompositions; LLT can accept matrices the eigensolver rounds to
// indefinite near the cone boundary.
double logdet_if_pd(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(m, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) return std::numeric_limits<double>::quiet_NaN();
    const RealVector& lambda = eig.eigenvalues();
    if (!(lambda.minCoeff() > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return lambda.array().log().sum();
}

EstimateResult vqt_attempt(const MeasurementRecord& record, const SymmetricBasis& basis,
                           const SolverOptions& opts, bool pin_small) {
    if (opts.eps_feas <= 0.0 || opts.eps_obj <= 0.0 || opts.barrier_init <= 0.0 ||
        opts.barrier_reduction <= 0.0 || opts.barrier_reduction >= 1.0 ||
        opts.max_iterations < 1) {
        throw ValidationError("invalid solver options");
    }
    if (static_cast<Index>(record.values.size()) != record.set.size()) {
        throw ValidationError("record values do not match its measurement set");
    }

    const int n = basis.n_qubits;
    const Index d = dim_for_qubits(n);
    const Index r = basis.dim();

    const RealMatrix all_rows = internal::design_rows(record.set, basis);
    const RowPartition part = partition_rows(record.values, record.value_kind);
    const Index n_eq = static_cast<Index>(part.equality.size());

    const RealVector tau = internal::trace_vector(basis);

    // Split off the sub-resolution rows that will be folded into the face.
    std::vector<Index> pinned;
    std::vector<Index> barrier;
    constexpr double w_pin = 1e-6;
    for (const Index row : part.inequality) {
        const bool small = std::abs(record.values[static_cast<std::size_t>(row)]) < w_pin;
        if (pin_small && small &&
            min_eigenvalue(record.set.effects[static_cast<std::size_t>(row)]) >=
                -NumericPolicy{}.psd_tol) {
            pinned.push_back(row);
        } else {
            barrier.push_back(row);
        }
    }
    const Index k = static_cast<Index>(barrier.size());

    // Face of the PSD cone pinned by the equality rows with PSD effects,
    // extended by the folded sub-resolution rows.
    RealVector esum_coords = RealVector::Zero(r);
    bool facial = false;
    for (const Index row : part.equality) {
        const HermitianOp& effect = record.set.effects[static_cast<std::size_t>(row)];
        if (min_eigenvalue(effect) >= -NumericPolicy{}.psd_tol) {
            esum_coords += all_rows.row(row).transpose();
            facial = true;
        }
    }
    for (const Index row : pinned) {
        esum_coords += all_rows.row(row).transpose();
        facial = true;
    }
    ComplexMatrix yiso;  // d x k_face isometry onto the common kernel
    Index k_face = d;
    if (facial) {
        const ComplexMatrix esum = internal::assemble_state(basis, esum_coords);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(esum);
        if (eig.info() != Eigen::Success) {
            throw NumericalError("vqt_estimate eigensolver failed on the equality effects");
        }
        const RealVector& lambda = eig.eigenvalues();
        const double ktol = 1e-10 * std::max(1.0, lambda[d - 1]);
        k_face = 0;
        while (k_face < d && lambda[k_face] <= ktol) ++k_face;
        if (k_face == 0) {
            if (!pinned.empty()) throw RetryWithoutPin{};
            throw EstimationError(
                "vqt_estimate infeasible: equality constraints admit no state "
                "(the constrained effects have no common kernel)");
        }
        yiso = eig.eigenvectors().leftCols(k_face);
    } else {
        yiso = ComplexMatrix::Identity(d, d);
    }

    // Affine system on alpha: face conditions rho = Pi rho Pi, the equality
    // rows themselves, and the unit trace.
    RealMatrix a_eq;
    RealVector b_eq;
    {
        const Index face_rows = (facial && k_face < d) ? 2 * d * d : 0;
        a_eq.resize(face_rows + n_eq + 1, r);
        b_eq = RealVector::Zero(face_rows + n_eq + 1);
        if (face_rows > 0) {
            const ComplexMatrix pi = yiso * yiso.adjoint();
            for (Index a = 0; a < r; ++a) {
                const ComplexMatrix& s = basis.elements[static_cast<std::size_t>(a)].mat();
                const ComplexMatrix dmat = s - pi * s * pi;
                for (Index col = 0; col < d; ++col) {
                    for (Index row = 0; row < d; ++row) {
                        a_eq(col * d + row, a) = dmat(row, col).real();
                        a_eq(d * d + col * d + row, a) = dmat(row, col).imag();
                    }
                }
            }
        }
        for (Index e = 0; e < n_eq; ++e) {
            a_eq.row(face_rows + e) = all_rows.row(part.equality[static_cast<std::size_t>(e)]);
        }
        a_eq.row(face_rows + n_eq) = tau.transpose();
        b_eq[face_rows + n_eq] = 1.0;
    }

    // JacobiSVD rather than BDCSVD: the bidiagonal divide-and-conquer kernel
    // returns wrong singular values for the face systems built here (tall
    // matrices dominated by near-zero rows), silently breaking the solve.
    Eigen::JacobiSVD<RealMatrix> svd(a_eq, Eigen::ComputeThinU | Eigen::ComputeFullV);
    const double sv_max = svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
    Index a_rank = 0;
    for (Index i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()[i] > 1e-10 * std::max(1.0, sv_max)) ++a_rank;
    }
    svd.setThreshold(1e-10);
    const RealVector alpha_p = svd.solve(b_eq);
    if ((a_eq * alpha_p - b_eq).norm() > 1e-8) {
        if (!pinned.empty()) throw RetryWithoutPin{};
        throw EstimationError(
            "vqt_estimate infeasible: no state in the symmetric subspace satisfies the "
            "equality constraints and unit trace");
    }
    const Index ydim = r - a_rank;
    const RealMatrix z = svd.matrixV().rightCols(ydim);

    const RealMatrix mm = gather_rows(all_rows, barrier) * z;
    RealVector t0(k), f(k), w(k);
    for (Index i = 0; i < k; ++i) {
        const Index row = barrier[static_cast<std::size_t>(i)];
        t0[i] = all_rows.row(row).dot(alpha_p);
        f[i] = record.values[static_cast<std::size_t>(row)];
        w[i] = std::abs(f[i]);
    }
    RealVector g_unmeasured = RealVector::Zero(ydim);
    double unmeasured_const = 0.0;
    for (const Index row : part.unmeasured) {
        g_unmeasured += (all_rows.row(row) * z).transpose();
        unmeasured_const += all_rows.row(row).dot(alpha_p);
    }

    // Direction operators S~_a = sum_j Z[j,a] S_j and their compressions.
    std::vector<ComplexMatrix> dirs;
    dirs.reserve(static_cast<std::size_t>(ydim));
    const RealMatrix dir_coords = z.transpose() * basis.coords;
    for (Index a = 0; a < ydim; ++a) {
        const ComplexMatrix full = matrix_from_pauli_coords(n, dir_coords.row(a));
        dirs.push_back(facial ? ComplexMatrix(yiso.adjoint() * full * yiso) : full);
    }

    const auto alpha_of = [&](const RealVector& y) -> RealVector {
        if (ydim == 0) return alpha_p;
        return alpha_p + z * y;
    };
    const auto rho_of = [&](const RealVector& y) -> ComplexMatrix {
        return internal::assemble_state(basis, alpha_of(y));
    };
    const auto sigma_of = [&](const RealVector& y) -> ComplexMatrix {
        const ComplexMatrix rho = rho_of(y);
        return facial ? ComplexMatrix(yiso.adjoint() * rho * yiso) : rho;
    };

    // Start at the maximally mixed state of the face, Pi / k_face, which is
    // symmetric because the spectral projectors of sum E~ stay in the
    // commutant algebra. Without equalities this is I/d. If affine-only
    // equality rows push the projected start off the cone, fall back to the
    // min-norm solution.
    RealVector y = RealVector::Zero(ydim);
    {
        ComplexMatrix start = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
        if (facial) start = yiso * yiso.adjoint() / static_cast<double>(k_face);
        const RealVector alpha_start = basis.coords * pauli_coords(n, start);
        if (ydim > 0) {
            y = z.transpose() * (alpha_start - alpha_p);
            if (std::isnan(logdet_if_pd(sigma_of(y)))) y.setZero();
        }
        if (std::isnan(logdet_if_pd(sigma_of(y)))) {
            if (!pinned.empty()) throw RetryWithoutPin{};
            throw EstimationError(
                "vqt_estimate infeasible: no strictly feasible starting state for the "
                "equality constraints");
        }
    }
    // Start each tolerance with slack ~max(w_i, 0.1) on both sides of the
    // band; starting at distance w_i from the boundary stalls the first
    // centerings when w_i is at the shot-noise floor.
    RealVector t = t0 + mm * y;
    RealVector delta(k);
    for (Index i = 0; i < k; ++i) {
        delta[i] = (std::abs(t[i] - f[i]) + std::max(w[i], 0.1)) / w[i];
    }

    double mu = opts.barrier_init;
    const double n_barrier_terms = static_cast<double>(k_face) + 3.0 * static_cast<double>(k);
    const double mu_min = std::clamp(opts.eps_obj / std::max(1.0, n_barrier_terms), 1e-9, 1e-8);

    const auto phi_of = [&](const RealVector& yv, const RealVector& dv) -> double {
        const double logdet = logdet_if_pd(sigma_of(yv));
        if (std::isnan(logdet)) return std::numeric_limits<double>::infinity();
        double value = dv.sum() + unmeasured_const + g_unmeasured.dot(yv);
        double barrier = -logdet;
        const RealVector tv = t0 + mm * yv;
        for (Index i = 0; i < k; ++i) {
            const double sp = dv[i] * w[i] - (tv[i] - f[i]);
            const double sm = dv[i] * w[i] + (tv[i] - f[i]);
            if (sp <= 0.0 || sm <= 0.0 || dv[i] <= 0.0) {
                return std::numeric_limits<double>::infinity();
            }
            barrier -= std::log(sp) + std::log(sm) + std::log(dv[i]);
        }
        return value + mu * barrier;
    };

    int iterations = 0;
    bool reached_cap = false;
    RealMatrix omega(2 * k_face * k_face, ydim);
    while (true) {
        for (int inner = 0; inner < 60; ++inner) {
            if (iterations >= opts.max_iterations) {
                reached_cap = true;
                break;
            }
            ++iterations;

            const ComplexMatrix sigma = sigma_of(y);
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(sigma);
            if (eig.info() != Eigen::Success) {
                throw NumericalError("vqt_estimate eigensolver failed");
            }
            const RealVector lambda = eig.eigenvalues();
            if (lambda.minCoeff() <= 0.0) {
                throw NumericalError("vqt_estimate lost strict feasibility of the PSD cone");
            }
            const ComplexMatrix& v = eig.eigenvectors();
            const RealVector inv_sqrt = lambda.cwiseSqrt().cwiseInverse();
            const RealVector inv = lambda.cwiseInverse();

            RealVector grad_logdet(ydim);
            for (Index a = 0; a < ydim; ++a) {
                const ComplexMatrix rotated = v.adjoint() * dirs[static_cast<std::size_t>(a)] * v;
                double diag_sum = 0.0;
                for (Index kk = 0; kk < k_face; ++kk) diag_sum += rotated(kk, kk).real() * inv[kk];
                grad_logdet[a] = diag_sum;
                for (Index col = 0; col < k_face; ++col) {
                    for (Index row = 0; row < k_face; ++row) {
                        const Complex wv = rotated(row, col) * (inv_sqrt[row] * inv_sqrt[col]);
                        omega(col * k_face + row, a) = wv.real();
                        omega(k_face * k_face + col * k_face + row, a) = wv.imag();
                    }
                }
            }

            t = t0 + mm * y;
            RealVector sp(k), sm(k);
            for (Index i = 0; i < k; ++i) {
                sp[i] = delta[i] * w[i] - (t[i] - f[i]);
                sm[i] = delta[i] * w[i] + (t[i] - f[i]);
            }

            RealVector gy = -mu * grad_logdet + g_unmeasured;
            RealVector huu(k), hud(k), hdd(k), gd(k), schur_w(k);
            for (Index i = 0; i < k; ++i) {
                const double isp = 1.0 / sp[i];
                const double ism = 1.0 / sm[i];
                const double wsp = w[i] * isp;
                const double wsm = w[i] * ism;
                const double idd = 1.0 / (delta[i] * delta[i]);
                gd[i] = 1.0 - mu * (w[i] * (isp + ism) + 1.0 / delta[i]);
                huu[i] = isp * isp + ism * ism;
                hud[i] = w[i] * (ism * ism - isp * isp);
                hdd[i] = wsp * wsp + wsm * wsm + idd;
                // huu - hud^2/hdd in expanded form; the direct difference
                // cancels catastrophically once w_i sits at the shot-noise
                // floor and sp_i ~ w_i, and a sign-flipped weight makes the
                // Schur complement indefinite.
                schur_w[i] = (4.0 * wsp * wsp * ism * ism + huu[i] * idd) / hdd[i];
            }
            if (k > 0) {
                gy += mu * (mm.transpose() * (sp.cwiseInverse() - sm.cwiseInverse()));
            }

            RealMatrix h_schur = RealMatrix::Zero(ydim, ydim);
            if (ydim > 0) {
                h_schur = omega.transpose() * omega;
                if (k > 0) {
                    h_schur += mm.transpose() * schur_w.asDiagonal() * mm;
                }
                h_schur *= mu;
            }

            RealVector rhs = -gy;
            if (k > 0) {
                rhs += mm.transpose() * (hud.cwiseProduct(gd).cwiseQuotient(hdd));
            }

            // The Schur system is positive definite in exact arithmetic, but
            // its conditioning collapses together with the slacks of rows
            // whose w_i sits at the shot-noise floor, and a sloppy solve can
            // hand back an ascent direction. For any ridge tau >= 0 the
            // eliminated system satisfies
            //   decrement = rhs' (H+tau)^-1 rhs + sum_i gd_i^2 / (mu hdd_i) > 0,
            // so a nonpositive computed decrement only ever signals solve
            // error; refine and escalate the ridge until descent certifies.
            RealVector dy = RealVector::Zero(ydim);
            RealVector ddelta = RealVector::Zero(k);
            double decrement_sq = 0.0;
            double ridge = 0.0;
            for (int attempt = 0; attempt < 10; ++attempt) {
                if (ydim > 0) {
                    RealMatrix h_try = h_schur;
                    if (ridge > 0.0) h_try.diagonal().array() += ridge;
                    Eigen::LDLT<RealMatrix> ldlt(h_try);
                    dy = ldlt.solve(rhs);
                    dy += ldlt.solve(rhs - h_try * dy);
                    dy += ldlt.solve(rhs - h_try * dy);
                }
                if (k > 0) {
                    const RealVector mdy = mm * dy;
                    for (Index i = 0; i < k; ++i) {
                        ddelta[i] = -(gd[i] + mu * hud[i] * mdy[i]) / (mu * hdd[i]);
                    }
                }
                decrement_sq = -(gy.dot(dy) + gd.dot(ddelta));
                if (std::isfinite(decrement_sq) && decrement_sq > 0.0 && dy.allFinite() &&
                    ddelta.allFinite()) {
                    break;
                }
                const double scale = std::max(1.0, h_schur.diagonal().maxCoeff());
                ridge = ridge == 0.0 ? 1e-12 * scale : 100.0 * ridge;
                decrement_sq = 0.0;
            }
            if (!(decrement_sq > 0.0)) break;

            // Exact max step over the linear slacks and the PSD cone
            // (fraction-to-boundary 0.99), then Armijo backtracking. The
            // whitened step L^-1 dsigma L^-H is assembled from the omega
            // columns; sigma + theta dsigma stays PD while I + theta W does.
            double theta = 1.0;
            const RealVector dt = mm * dy;
            for (Index i = 0; i < k; ++i) {
                const double dsp = ddelta[i] * w[i] - dt[i];
                const double dsm = ddelta[i] * w[i] + dt[i];
                if (ddelta[i] < 0.0) theta = std::min(theta, -0.99 * delta[i] / ddelta[i]);
                if (dsp < 0.0) theta = std::min(theta, -0.99 * sp[i] / dsp);
                if (dsm < 0.0) theta = std::min(theta, -0.99 * sm[i] / dsm);
            }
            if (ydim > 0) {
                const RealVector wvec = omega * dy;
                ComplexMatrix wdir(k_face, k_face);
                for (Index col = 0; col < k_face; ++col) {
                    for (Index row = 0; row < k_face; ++row) {
                        wdir(row, col) = Complex(wvec[col * k_face + row],
                                                 wvec[k_face * k_face + col * k_face + row]);
                    }
                }
                Eigen::SelfAdjointEigenSolver<ComplexMatrix> weig(wdir, Eigen::EigenvaluesOnly);
                if (weig.info() == Eigen::Success) {
                    const double wmin = weig.eigenvalues().minCoeff();
                    if (wmin < 0.0) theta = std::min(theta, -0.99 / wmin);
                }
            }

            const double phi_now = phi_of(y, delta);
            const double slope = -decrement_sq;
            bool stepped = false;
            for (int bt = 0; bt < 48; ++bt) {
                const RealVector y_next = y + theta * dy;
                const RealVector delta_next = delta + theta * ddelta;
                const double phi_next = phi_of(y_next, delta_next);
                if (phi_next <= phi_now + 1e-4 * theta * slope) {
                    y = y_next;
                    delta = delta_next;
                    stepped = true;
                    break;
                }
                theta *= 0.5;
            }
            if (!stepped) break;
            // The decrement only certifies centering when it came from the
            // unridged system; a heavily ridged direction can look converged
            // while the true Newton decrement is still large.
            if (ridge == 0.0 && decrement_sq / 2.0 <= std::max(1e-16, 1e-2 * mu)) break;
        }

        if (mu <= mu_min * (1.0 + 1e-12) || reached_cap) break;
        mu = std::max(mu_min, mu * opts.barrier_reduction);
    }

    const RealVector alpha = alpha_of(y);
    HermitianOp rho_hat(rho_of(y));
    const double lambda_min = min_eigenvalue(rho_hat);
    const double trace_dev = std::abs(rho_hat.trace() - 1.0);

    t = t0 + mm * y;
    RealVector deltas_full = RealVector::Zero(record.set.size());
    double objective = unmeasured_const + g_unmeasured.dot(y);
    double worst_violation = std::max(trace_dev, std::max(0.0, -lambda_min));
    std::string worst_label = -lambda_min > trace_dev ? "positivity" : "trace";
    const auto label_of = [&](std::size_t row) {
        return record.set.labels.empty() ? "effect " + std::to_string(row)
                                         : record.set.labels[row];
    };
    for (Index i = 0; i < k; ++i) {
        const auto row = static_cast<std::size_t>(barrier[static_cast<std::size_t>(i)]);
        deltas_full[static_cast<Index>(row)] = delta[i];
        objective += delta[i];
        const double violation = std::abs(t[i] - f[i]) - delta[i] * w[i];
        if (violation > worst_violation) {
            worst_violation = violation;
            worst_label = label_of(row);
        }
    }
    for (const Index row : pinned) {
        const double fv = record.values[static_cast<std::size_t>(row)];
        const double dv = std::abs(all_rows.row(row).dot(alpha) - fv) / std::abs(fv);
        deltas_full[row] = dv;
        objective += dv;
    }
    for (const Index row : part.equality) {
        const double violation = std::abs(all_rows.row(row).dot(alpha));
        if (violation > worst_violation) {
            worst_violation = violation;
            worst_label = label_of(static_cast<std::size_t>(row));
        }
    }

    if (reached_cap && worst_violation > opts.eps_feas) {
        std::ostringstream msg;
        msg << "vqt_estimate infeasible after " << iterations
            << " iterations: worst violated constraint '" << worst_label << "' by "
            << worst_violation;
        throw EstimationError(msg.str());
    }

    EstimateResult result{
        alpha,
        std::move(rho_hat),
        objective,
        std::move(deltas_full),
        iterations,
        worst_violation,
        lambda_min,
        trace_dev <= 1e-8 && lambda_min >= -1e-7,
        std::nullopt,
    };
    return result;
}

}  // namespace

EstimateResult vqt_estimate(const MeasurementRecord& record, const SymmetricBasis& basis,
                            const SolverOptions& opts) {
    try {
        return vqt_attempt(record, basis, opts, true);
    } catch (const RetryWithoutPin&) {
        return vqt_attempt(record, basis, opts, false);
    }
}

}  // namespace symtomo
