#include "vortexlab/kernels.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "vortexlab/errors.hpp"

namespace vortexlab {

namespace {

constexpr double kGaussWindow = 8.0;   // Gaussian support cut, in widths

double gaussian_delta(double x, double eta) {
    static const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * M_PI);
    const double z = x / eta;
    return inv_sqrt_2pi / eta * std::exp(-0.5 * z * z);
}

void check_occupations(const BdGSpectrum& s, const char* who) {
    if (s.occupations.size() != s.energies.size() || !(s.beta > 0.0))
        throw domain_error(std::string(who) + ": spectrum occupations not populated");
}

} // namespace

VecXd spectral_function(const ForceMatrixElements& elements, const BdGSpectrum& spectrum,
                        const VecXd& omega_grid, double eta_b) {
    if (omega_grid.size() == 0) throw domain_error("spectral_function: empty omega grid");
    if (eta_b <= 0.0) throw domain_error("spectral_function: eta_b must be positive");
    check_occupations(spectrum, "spectral_function");

    const int dim = spectrum.dim();
    const int ng = static_cast<int>(omega_grid.size());
    const double w0 = omega_grid[0];
    const double dw = ng > 1 ? (omega_grid[ng - 1] - w0) / (ng - 1) : 1.0;

    VecXd j = VecXd::Zero(ng);
    for (int k = 0; k < dim; ++k) {
        for (int kp = k + 1; kp < dim; ++kp) {
            const double df = std::abs(spectrum.occupations[k] - spectrum.occupations[kp]);
            if (df == 0.0) continue;
            const double m2 = 0.5 * (std::norm(elements.mx(k, kp)) + std::norm(elements.my(k, kp)));
            const double wgt = 0.5 * M_PI * df * m2;   // one unordered pair = one bath mode
            if (wgt == 0.0) continue;
            const double e = std::abs(spectrum.energies[k] - spectrum.energies[kp]);
            // Gaussian mirrored about w=0 so no weight escapes the w>=0 axis
            // (the sum rule is then exact for any broadening width)
            for (const double center : {e, -e}) {
                int lo = 0, hi = ng - 1;
                if (ng > 1) {
                    lo = std::max(0, static_cast<int>(std::floor(
                                         (center - kGaussWindow * eta_b - w0) / dw)));
                    hi = std::min(ng - 1, static_cast<int>(std::ceil(
                                              (center + kGaussWindow * eta_b - w0) / dw)));
                }
                for (int i = lo; i <= hi; ++i)
                    j[i] += wgt * gaussian_delta(omega_grid[i] - center, eta_b);
                if (e == 0.0) break;
            }
        }
    }
    return j;
}

double spectral_weight_exact(const ForceMatrixElements& elements, const BdGSpectrum& spectrum) {
    check_occupations(spectrum, "spectral_weight_exact");
    const int dim = spectrum.dim();
    double total = 0.0;
    for (int k = 0; k < dim; ++k)
        for (int kp = k + 1; kp < dim; ++kp) {
            const double df = std::abs(spectrum.occupations[k] - spectrum.occupations[kp]);
            if (df == 0.0) continue;
            total += 0.5 * M_PI * df *
                     0.5 * (std::norm(elements.mx(k, kp)) + std::norm(elements.my(k, kp)));
        }
    return total;
}

double spectral_weight_over_omega_exact(const ForceMatrixElements& elements,
                                        const BdGSpectrum& spectrum) {
    check_occupations(spectrum, "spectral_weight_over_omega_exact");
    const int dim = spectrum.dim();
    double total = 0.0;
    for (int k = 0; k < dim; ++k)
        for (int kp = k + 1; kp < dim; ++kp) {
            const double df = std::abs(spectrum.occupations[k] - spectrum.occupations[kp]);
            if (df == 0.0) continue;
            const double e = std::abs(spectrum.energies[k] - spectrum.energies[kp]);
            if (e < 1e-14) continue;
            total += 0.5 * M_PI * df *
                     0.5 * (std::norm(elements.mx(k, kp)) + std::norm(elements.my(k, kp))) / e;
        }
    return total;
}

double default_broadening(const BdGSpectrum& spectrum) {
    const double range = spectrum.energies[spectrum.dim() - 1] - spectrum.energies[0];
    return 3.0 * range / spectrum.dim();
}

DampingKernelResult damping_kernel(const VecXd& omega_grid, const VecXd& j_of_omega,
                                   const VecXd& tau_grid, double beta) {
    if (omega_grid.size() != j_of_omega.size())
        throw domain_error("damping_kernel: omega grid / J size mismatch");
    if (omega_grid.size() < 2) throw domain_error("damping_kernel: omega grid too short");
    if (!(beta > 0.0)) throw domain_error("damping_kernel: beta must be positive");
    if (!std::isinf(beta)) {
        for (int i = 0; i < tau_grid.size(); ++i)
            if (tau_grid[i] < 0.0 || tau_grid[i] > beta)
                throw domain_error("damping_kernel: tau grid must lie in [0, hbar beta]");
    }

    DampingKernelResult out;
    out.f_parallel = VecXd::Zero(tau_grid.size());
    const double jmax = j_of_omega.cwiseAbs().maxCoeff();

    VecXd integrand(omega_grid.size());
    for (int it = 0; it < tau_grid.size(); ++it) {
        const double tau = tau_grid[it];
        for (int i = 0; i < omega_grid.size(); ++i) {
            const double w = omega_grid[i];
            if (w <= 0.0) {
                // coth-like limit: J(w) cosh/sinh -> (J(w)/w) * 2/(hbar beta)
                const double slope = omega_grid[i + 1] > 0.0
                                         ? j_of_omega[i + 1] / omega_grid[i + 1]
                                         : 0.0;
                integrand[i] = std::isinf(beta) ? 0.0 : slope * 2.0 / beta;
                if (j_of_omega[i] > 1e-12 * std::max(jmax, 1e-300)) out.omega0_flagged = true;
            } else {
                integrand[i] = j_of_omega[i] * cosh_sinh_ratio(w, tau, beta);
            }
        }
        out.f_parallel[it] = trapezoid(omega_grid, integrand) / M_PI;
    }
    return out;
}

TransverseVirtualResult transverse_coefficient_virtual(const ForceMatrixElements& elements,
                                                       const BdGSpectrum& spectrum,
                                                       double degeneracy_tol) {
    check_occupations(spectrum, "transverse_coefficient_virtual");
    const int dim = spectrum.dim();
    TransverseVirtualResult out;
    double acc = 0.0;
    for (int k = 0; k < dim; ++k) {
        for (int kp = 0; kp < dim; ++kp) {
            if (kp == k) continue;
            const double de = spectrum.energies[k] - spectrum.energies[kp];
            const double imxy = std::imag(elements.mx(k, kp) * elements.my(kp, k));
            if (std::abs(de) <= degeneracy_tol) {
                if (imxy != 0.0) {
                    ++out.skipped_pairs;
                    out.skipped_bound += std::abs(imxy) /
                                         std::max(degeneracy_tol * degeneracy_tol, 1e-300);
                }
                continue;
            }
            const double df = spectrum.occupations[k] - spectrum.occupations[kp];
            if (df == 0.0) continue;
            acc += df * imxy / (de * de);
        }
    }
    out.b = acc;
    return out;
}

namespace {

// Procrustes-align the displaced eigenbasis to the reference, cluster by
// degenerate cluster (gaps below cluster_tol merge; displacement mixes such
// states completely, only the aligned subspace is meaningful).
double align_to_reference(const BdGSpectrum& ref, MatXcd& displaced, double cluster_tol) {
    const int dim = ref.dim();
    double min_sv = 1.0;
    int i = 0;
    while (i < dim) {
        int j = i + 1;
        while (j < dim && ref.energies[j] - ref.energies[j - 1] < cluster_tol) ++j;
        const int c = j - i;
        const MatXcd overlap = ref.states.middleCols(i, c).adjoint() * displaced.middleCols(i, c);
        Eigen::JacobiSVD<MatXcd> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
        min_sv = std::min(min_sv, svd.singularValues().minCoeff());
        displaced.middleCols(i, c) *= svd.matrixV() * svd.matrixU().adjoint();
        i = j;
    }
    return min_sv;
}

} // namespace

TransverseStateResult transverse_coefficient_state(const LatticeModel& model,
                                                   const PairField& pair,
                                                   const BdGSpectrum& spectrum,
                                                   double fd_step,
                                                   double cluster_tol) {
    check_occupations(spectrum, "transverse_coefficient_state");
    if (fd_step <= 0.0)
        throw domain_error("transverse_coefficient_state: fd_step must be positive");
    const int dim = spectrum.dim();

    TransverseStateResult out;
    MatXcd grad[2];
    for (int axis = 0; axis < 2; ++axis) {
        MatXcd solved[2];
        for (int side = 0; side < 2; ++side) {
            Vec2 e = Vec2::Zero();
            e[axis] = side == 0 ? fd_step : -fd_step;
            const PairField moved = displace_pair_field(pair, e);
            BdGSpectrum sp = diagonalize(assemble_bdg(model, moved));
            const double sv = align_to_reference(spectrum, sp.states, cluster_tol);
            if (sv < 0.9) {
                // identify the worst-tracked state for the message
                int worst = 0;
                double wv = 2.0;
                for (int k = 0; k < dim; ++k) {
                    const double ov = std::abs((spectrum.states.col(k).adjoint() * sp.states.col(k))(0));
                    if (ov < wv) { wv = ov; worst = k; }
                }
                throw numeric_error(
                    "transverse_coefficient_state: eigenvector tracking failed at state " +
                    std::to_string(worst) + " (overlap " + format_g17(wv) +
                    "); reduce fd_step or raise cluster_tol");
            }
            out.min_overlap = std::min(out.min_overlap, sv);
            solved[side] = std::move(sp.states);
        }
        grad[axis] = (solved[0] - solved[1]) / (2.0 * fd_step);
    }

    out.per_state.resize(dim);
    double acc = 0.0;
    for (int k = 0; k < dim; ++k) {
        const double curv = std::imag(grad[0].col(k).dot(grad[1].col(k)));   // Im <dx|dy>
        out.per_state[k] = 2.0 * spectrum.occupations[k] * curv;
        acc += out.per_state[k];
    }
    out.b = acc;
    return out;
}

SpringConstantResult spring_constant(const LatticeModel& model, const PairField& pair,
                                     const VecXd& omega_grid, const VecXd& j_of_omega,
                                     double g, double fd_step) {
    if (g <= 0.0) throw domain_error("spring_constant: coupling g must be positive");
    if (pair.delta.size() != model.n_sites())
        throw domain_error("spring_constant: pair field not defined on this lattice");
    if (omega_grid.size() != j_of_omega.size() || omega_grid.size() < 2)
        throw domain_error("spring_constant: bad omega grid");

    // tail check: J support must be inside the grid
    const double total = trapezoid(omega_grid, j_of_omega);
    const int ng = static_cast<int>(omega_grid.size());
    const int tail_lo = ng - std::max(2, ng / 20);
    const double tail = trapezoid(omega_grid.segment(tail_lo, ng - tail_lo),
                                  j_of_omega.segment(tail_lo, ng - tail_lo));
    if (total > 0.0 && tail > 1e-4 * total)
        throw numeric_error("spring_constant: J weight in the last grid 5% is " +
                            format_g17(tail / total) + " of the total; widen omega_grid");

    SpringConstantResult out;
    const VecXcd gx = pair_field_gradient(pair, 0, fd_step);
    const VecXcd gy = pair_field_gradient(pair, 1, fd_step);
    out.term_field = (gx.squaredNorm() + gy.squaredNorm()) / g;

    VecXd integrand(ng);
    for (int i = 0; i < ng; ++i) {
        const double w = omega_grid[i];
        if (w <= 0.0) {
            integrand[i] = omega_grid[i + 1] > 0.0 ? j_of_omega[i + 1] / omega_grid[i + 1] : 0.0;
        } else {
            integrand[i] = j_of_omega[i] / w;
        }
    }
    out.term_spectral = (4.0 / M_PI) * trapezoid(omega_grid, integrand);
    out.k = out.term_field - out.term_spectral;
    return out;
}

KernelSet assemble_action_kernels(double k_spring, const VecXd& tau_grid,
                                  const VecXd& f_parallel, double b_transverse,
                                  const VecXd& omega_grid, const VecXd& j_of_omega,
                                  double eta_b, double beta, std::uint64_t disorder_seed) {
    if (tau_grid.size() != f_parallel.size())
        throw domain_error("assemble_action_kernels: tau grid / F_par size mismatch");
    if (omega_grid.size() != j_of_omega.size())
        throw domain_error("assemble_action_kernels: omega grid / J size mismatch");
    for (int i = 0; i < j_of_omega.size(); ++i)
        if (j_of_omega[i] < -1e-12)
            throw numeric_error("assemble_action_kernels: J(omega) negative at node " +
                                std::to_string(i));
    if (!std::isfinite(b_transverse) || !std::isfinite(k_spring))
        throw numeric_error("assemble_action_kernels: non-finite kernel scalar");

    KernelSet ks;
    ks.omega_grid = omega_grid;
    ks.j_of_omega = j_of_omega;
    ks.tau_grid = tau_grid;
    ks.f_parallel = f_parallel;
    ks.b_transverse = b_transverse;
    ks.k_spring = k_spring;
    ks.eta_broadening = eta_b;
    ks.beta = beta;
    ks.disorder_seed = disorder_seed;
    return ks;
}

} // namespace vortexlab
