#include "vortexlab/spectrum.hpp"

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vortexlab/errors.hpp"

namespace vortexlab {

namespace {

// canonical per-vector gauge: largest-|.| component real positive
void phase_fix(MatXcd& w) {
    for (int k = 0; k < w.cols(); ++k) {
        int imax = 0;
        double best = -1.0;
        for (int i = 0; i < w.rows(); ++i) {
            const double m = std::norm(w(i, k));
            if (m > best) { best = m; imax = i; }
        }
        const cplx z = w(imax, k);
        if (std::abs(z) > 0.0) w.col(k) *= std::conj(z) / std::abs(z);
    }
}

void degenerate_tie_break(VecXd& e, MatXcd& w, double tol) {
    const int n = static_cast<int>(e.size());
    int i = 0;
    while (i < n) {
        int j = i + 1;
        while (j < n && e[j] - e[j - 1] <= tol) ++j;
        if (j - i > 1) {
            std::vector<int> idx(j - i);
            std::iota(idx.begin(), idx.end(), i);
            auto lead_row = [&](int k) {
                int imax = 0;
                double best = -1.0;
                for (int r = 0; r < w.rows(); ++r) {
                    const double m = std::norm(w(r, k));
                    if (m > best) { best = m; imax = r; }
                }
                return imax;
            };
            std::stable_sort(idx.begin(), idx.end(),
                             [&](int a, int b) { return lead_row(a) < lead_row(b); });
            MatXcd cols(w.rows(), j - i);
            VecXd ee(j - i);
            for (int k = 0; k < j - i; ++k) {
                cols.col(k) = w.col(idx[k]);
                ee[k] = e[idx[k]];
            }
            w.middleCols(i, j - i) = cols;
            e.segment(i, j - i) = ee;
        }
        i = j;
    }
}

} // namespace

BdGSpectrum diagonalize(const MatXcd& matrix) {
    const int n = static_cast<int>(matrix.rows());
    if (matrix.cols() != n || n == 0)
        throw domain_error("diagonalize: matrix must be square and non-empty");
    const double scale = std::max(matrix.cwiseAbs().maxCoeff(), 1.0);
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw domain_error("diagonalize: matrix is not Hermitian");

    BdGSpectrum s;
    s.energies.resize(n);
    s.states = matrix;   // overwritten with eigenvectors
    const lapack_int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'V', 'L', n,
        reinterpret_cast<lapack_complex_double*>(s.states.data()), n,
        s.energies.data());
    if (info != 0)
        throw numeric_error("diagonalize: zheevd failed with info=" + std::to_string(info) +
                            " (matrix scale " + format_g17(scale) + ")");
    phase_fix(s.states);
    degenerate_tie_break(s.energies, s.states, 1e-12 * scale);
    s.occupations = VecXd::Zero(n);
    return s;
}

double fermi_factor(double energy, double beta) {
    if (std::isinf(beta)) {
        if (energy > 0.0) return 0.0;
        if (energy < 0.0) return 1.0;
        return 0.5;
    }
    const double x = beta * energy;
    if (x > 700.0) return 0.0;
    if (x < -700.0) return 1.0;
    return 1.0 / (1.0 + std::exp(x));
}

BdGSpectrum occupations_at(BdGSpectrum spectrum, double beta) {
    if (!(beta > 0.0))
        throw domain_error("occupations_at: beta must be positive (or +inf)");
    spectrum.beta = beta;
    spectrum.occupations.resize(spectrum.dim());
    for (int k = 0; k < spectrum.dim(); ++k)
        spectrum.occupations[k] = fermi_factor(spectrum.energies[k], beta);
    return spectrum;
}

VecXd particle_density(const BdGSpectrum& spectrum) {
    const int n = spectrum.n_sites();
    const VecXd& f = spectrum.occupations;
    VecXd dens = VecXd::Zero(n);
    dens += spectrum.u_block().cwiseAbs2() * f;
    dens += spectrum.v_block().cwiseAbs2() * (VecXd::Ones(spectrum.dim()) - f);
    return dens;
}

double quasiparticle_potential(const VecXd& energies, double beta) {
    double sum = 0.0;
    if (std::isinf(beta)) {
        for (int k = 0; k < energies.size(); ++k)
            if (energies[k] < 0.0) sum += energies[k];
        return sum;
    }
    for (int k = 0; k < energies.size(); ++k) {
        const double x = -beta * energies[k];
        sum -= (x > 30.0 ? x : std::log1p(std::exp(std::min(x, 30.0)))) / beta;
    }
    return sum;
}

double max_orthonormality_defect(const BdGSpectrum& spectrum) {
    const MatXcd g = spectrum.states.adjoint() * spectrum.states;
    return (g - MatXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

double max_eigen_residual(const MatXcd& matrix, const BdGSpectrum& spectrum) {
    const MatXcd r = matrix * spectrum.states -
                     spectrum.states * spectrum.energies.asDiagonal();
    return r.colwise().norm().maxCoeff();
}

double max_ph_pairing_defect(const VecXd& energies) {
    const int n = static_cast<int>(energies.size());
    double worst = 0.0;
    for (int k = 0; k < n; ++k)
        worst = std::max(worst, std::abs(energies[k] + energies[n - 1 - k]));
    return worst;
}

} // namespace vortexlab
