#ifndef VORTEXLAB_SPECTRUM_HPP
#define VORTEXLAB_SPECTRUM_HPP

#include <limits>

#include "vortexlab/numerics.hpp"

namespace vortexlab {

// Full eigendecomposition of a BdG matrix.  Column k of `states` is
// Psi_k = (u_k, v_k); energies ascending.  occupations hold the Fermi factors
// once `occupations_at` has been applied (beta = +inf allowed).
struct BdGSpectrum {
    VecXd energies;
    MatXcd states;
    double beta = std::numeric_limits<double>::infinity();
    VecXd occupations;

    int dim() const { return static_cast<int>(energies.size()); }
    int n_sites() const { return dim() / 2; }
    Eigen::Block<const MatXcd> u_block() const { return states.topRows(n_sites()); }
    Eigen::Block<const MatXcd> v_block() const { return states.bottomRows(n_sites()); }
};

// Dense Hermitian eigensolve (LAPACK zheevd).  Deterministic output gauge:
// every eigenvector is phase-fixed so its largest-magnitude component is real
// positive; within numerically degenerate groups columns are ordered by the
// row index of that component (stable tie-break).
BdGSpectrum diagonalize(const MatXcd& matrix);

// Overflow-safe f = 1/(1 + e^{beta E}); beta = +inf gives the step function.
double fermi_factor(double energy, double beta);

// Populate `occupations` for inverse temperature beta (> 0 or +inf).
BdGSpectrum occupations_at(BdGSpectrum spectrum, double beta);

// One-body density n(x) = sum_k [f_k |u_k|^2 + (1-f_k) |v_k|^2] over the
// particle-hole doubled spectrum (equals the spin-2 sum over E_k > 0).
VecXd particle_density(const BdGSpectrum& spectrum);

// Quasiparticle grand potential sum_k -ln(1+e^{-beta E_k})/beta (T=0 limit:
// sum of negative eigenvalues).  Pair-term |Delta|^2/g is added by callers.
double quasiparticle_potential(const VecXd& energies, double beta);

// Diagnostics used by invariants/tests.
double max_orthonormality_defect(const BdGSpectrum& spectrum);
double max_eigen_residual(const MatXcd& matrix, const BdGSpectrum& spectrum);
double max_ph_pairing_defect(const VecXd& energies);

} // namespace vortexlab

#endif
