// Test-only closed forms and independent reference computations.  Everything
// here is derived without calling the library paths it is used to check.
#ifndef VORTEXLAB_TEST_ORACLES_HPP
#define VORTEXLAB_TEST_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracles {

// Eigenvalues of the clean 5-point stencil, periodic boundary:
// -2t(cos(2 pi nx / Nx) + cos(2 pi ny / Ny)) - mu.
inline std::vector<double> periodic_stencil_spectrum(int nx, int ny, double t, double mu) {
    std::vector<double> e;
    e.reserve(static_cast<std::size_t>(nx) * ny);
    for (int jy = 0; jy < ny; ++jy)
        for (int jx = 0; jx < nx; ++jx)
            e.push_back(-2.0 * t * (std::cos(2.0 * M_PI * jx / nx) +
                                    std::cos(2.0 * M_PI * jy / ny)) - mu);
    std::sort(e.begin(), e.end());
    return e;
}

// Open boundary: discrete sine basis, -2t(cos(pi j/(N+1)) + ...), j = 1..N.
inline std::vector<double> open_stencil_spectrum(int nx, int ny, double t, double mu) {
    std::vector<double> e;
    e.reserve(static_cast<std::size_t>(nx) * ny);
    for (int jy = 1; jy <= ny; ++jy)
        for (int jx = 1; jx <= nx; ++jx)
            e.push_back(-2.0 * t * (std::cos(M_PI * jx / (nx + 1)) +
                                    std::cos(M_PI * jy / (ny + 1))) - mu);
    std::sort(e.begin(), e.end());
    return e;
}

// BCS quasiparticle energies +-sqrt(xi^2 + d^2) for a uniform gap.
inline std::vector<double> uniform_bcs_spectrum(int nx, int ny, double t, double mu, double d) {
    std::vector<double> e;
    e.reserve(2 * static_cast<std::size_t>(nx) * ny);
    for (double xi : periodic_stencil_spectrum(nx, ny, t, mu)) {
        const double q = std::sqrt(xi * xi + d * d);
        e.push_back(-q);
        e.push_back(q);
    }
    std::sort(e.begin(), e.end());
    return e;
}

// Scalar BCS gap equation on the clean periodic lattice: root of
// 1 = (g/N) sum_{0 < E_k < cutoff} (1 - 2 f(E_k)) / (2 E_k), by bisection
// on the gap amplitude.  Independent of the matrix self-consistency loop.
inline double scalar_gap_root(int nx, int ny, double t, double mu, double g,
                              double beta, double cutoff, double hi = 4.0) {
    auto rhs = [&](double d) {
        double sum = 0.0;
        for (double xi : periodic_stencil_spectrum(nx, ny, t, mu)) {
            const double e = std::sqrt(xi * xi + d * d);
            if (e <= 0.0 || e >= cutoff) continue;
            double f;
            if (std::isinf(beta)) f = 0.0;
            else {
                const double x = beta * e;
                f = x > 700 ? 0.0 : 1.0 / (1.0 + std::exp(x));
            }
            sum += (1.0 - 2.0 * f) / (2.0 * e);
        }
        return g * sum / (nx * ny);
    };
    double lo = 1e-12;
    if (rhs(lo) < 1.0) return 0.0;        // only the trivial solution
    while (rhs(hi) > 1.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (rhs(mid) > 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Damping kernel of a single bath mode of weight w at frequency w0 (Eq for a
// delta-peak spectral density), naive evaluation.
inline double single_mode_damping(double w, double w0, double tau, double beta) {
    if (std::isinf(beta)) return w / M_PI * std::exp(-w0 * std::abs(tau));
    return w / M_PI * std::cosh(w0 * (0.5 * beta - std::abs(tau))) /
           std::sinh(w0 * 0.5 * beta);
}

// Logarithmic-spiral rates of the massless EOM eta v + B v x z + K x = 0:
// decay K eta / (B^2 + eta^2), rotation K B / (B^2 + eta^2).
struct SpiralRates {
    double decay;
    double rotation;
};
inline SpiralRates spiral_rates(double b, double eta, double k) {
    const double d = b * b + eta * eta;
    return {k * eta / d, k * b / d};
}

} // namespace oracles

#endif
