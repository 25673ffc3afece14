#ifndef VORTEXLAB_KERNELS_HPP
#define VORTEXLAB_KERNELS_HPP

#include <cstdint>

#include "vortexlab/force_elements.hpp"
#include "vortexlab/self_consistency.hpp"

namespace vortexlab {

// Everything the effective vortex action needs: the spectral function J(w)
// behind the damping kernel F_par(tau), the transverse (Magnus) coefficient B
// and the spring constant K.
struct KernelSet {
    VecXd omega_grid;
    VecXd j_of_omega;
    VecXd tau_grid;
    VecXd f_parallel;
    double b_transverse = 0.0;
    double k_spring = 0.0;
    double eta_broadening = 0.0;
    double beta = 0.0;
    std::uint64_t disorder_seed = 0;
};

// J(w) = (pi/2) sum_{pairs k<k'} delta_eta(w - |E_k - E_k'|) |f_k - f_k'|
//        (|Mx_{kk'}|^2 + |My_{kk'}|^2)/2
// with a normalized Gaussian delta of width eta_b.  One unordered level pair
// is one bath mode (the oscillator-bath normalization); the (x,y) average
// makes J the isotropic scalar entering the friction diagonal.
VecXd spectral_function(const ForceMatrixElements& elements, const BdGSpectrum& spectrum,
                        const VecXd& omega_grid, double eta_b);

// Broadening-free total weight sum_{k,k'} (pi/2)|f_k-f_k'| <|M|^2>; equals
// the integral of the broadened J up to Gaussian tail clipping (sum rule).
double spectral_weight_exact(const ForceMatrixElements& elements, const BdGSpectrum& spectrum);

// Same double sum with one power of 1/|E_k - E_k'|: the exact counterpart of
// the quadrature int dw J(w)/w used in the spring constant.
double spectral_weight_over_omega_exact(const ForceMatrixElements& elements,
                                        const BdGSpectrum& spectrum);

// 3x the mean level spacing across the spectral range (default delta-function
// broadening for desk-scale lattices).
double default_broadening(const BdGSpectrum& spectrum);

// F_par(tau) = (1/pi) int_0^inf dw J(w) cosh[w(hb/2-|tau|)]/sinh[w hb/2],
// trapezoid on omega_grid with the overflow-safe ratio.  An w=0 node is
// handled by the coth-like limit 2/(w hbar beta) using the local slope of J;
// `omega0_flagged` reports J(0) > 0 (the integrand is then singular and the
// slope substitution is an approximation).
struct DampingKernelResult {
    VecXd f_parallel;
    bool omega0_flagged = false;
};
DampingKernelResult damping_kernel(const VecXd& omega_grid, const VecXd& j_of_omega,
                                   const VecXd& tau_grid, double beta);

// Transverse coefficient from virtual transitions (perturbation-theory route):
// B = sum_{k != k'} hbar (f_k - f_k') Im[Mx_{kk'} My_{k'k}] / (E_k - E_k')^2.
// Pairs inside the degeneracy tolerance are skipped; their |Im Mx My| bound is
// reported (exactly degenerate pairs carry f_k = f_k' and contribute nothing).
struct TransverseVirtualResult {
    double b = 0.0;
    int skipped_pairs = 0;
    double skipped_bound = 0.0;   // sum |Im Mx My| / tol^2 over skipped pairs
};
TransverseVirtualResult transverse_coefficient_virtual(const ForceMatrixElements& elements,
                                                       const BdGSpectrum& spectrum,
                                                       double degeneracy_tol = 1e-8);

// Transverse coefficient state-by-state: B = 2 hbar sum_k f_k Im<dx Psi_k|dy Psi_k>
// with the vortex-position gradients of the eigenstates taken by central finite
// differences of re-solved displaced configurations, after maximal-overlap
// (Procrustes) gauge alignment of degenerate clusters against the undisplaced
// states.  This is the occupation-weighted per-state Berry curvature; the
// particle-hole relabel identity folds the hole-sector -(1-f) grad v* x grad v
// term into it, which keeps the finite-lattice completeness artifact out of
// the sum.
struct TransverseStateResult {
    double b = 0.0;
    VecXd per_state;          // 2 f_k Im<dx Psi_k|dy Psi_k> per state
    double min_overlap = 1.0; // smallest alignment singular value seen
};
TransverseStateResult transverse_coefficient_state(const LatticeModel& model,
                                                   const PairField& pair,
                                                   const BdGSpectrum& spectrum,
                                                   double fd_step,
                                                   double cluster_tol = 1e-6);

// Spring constant K = (1/g) sum_x |grad_x0 Delta|^2 - (4/pi) int dw J(w)/w.
// The spectral term carries the counterterm weight that makes K the true
// curvature of the confining potential for the two-component coupling and the
// isotropically averaged J (2/pi per Cartesian direction); both pieces are
// reported separately because their near-cancellation is physical.
struct SpringConstantResult {
    double k = 0.0;
    double term_field = 0.0;      // (1/g) sum_x |grad_x0 Delta|^2
    double term_spectral = 0.0;   // (4/pi) int dw J(w)/w
};
SpringConstantResult spring_constant(const LatticeModel& model, const PairField& pair,
                                     const VecXd& omega_grid, const VecXd& j_of_omega,
                                     double g, double fd_step);

// Package with invariant re-checks (J >= 0, F_par symmetric when the tau grid
// spans [0, hbar beta], B finite).
KernelSet assemble_action_kernels(double k_spring, const VecXd& tau_grid,
                                  const VecXd& f_parallel, double b_transverse,
                                  const VecXd& omega_grid, const VecXd& j_of_omega,
                                  double eta_b, double beta, std::uint64_t disorder_seed);

} // namespace vortexlab

#endif
