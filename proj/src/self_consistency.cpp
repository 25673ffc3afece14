#include "vortexlab/self_consistency.hpp"

#include <cmath>

#include "vortexlab/errors.hpp"

namespace vortexlab {

VecXcd gap_update(const BdGSpectrum& spectrum, double g, double cutoff) {
    const int n = spectrum.n_sites();
    VecXcd d = VecXcd::Zero(n);
    for (int k = 0; k < spectrum.dim(); ++k) {
        const double e = spectrum.energies[k];
        if (e <= 0.0 || e >= cutoff) continue;
        const double w = g * (1.0 - 2.0 * spectrum.occupations[k]);
        d += w * (spectrum.states.col(k).head(n).array() *
                  spectrum.states.col(k).tail(n).array().conjugate()).matrix();
    }
    return d;
}

SelfConsistentSolution self_consistent_gap(const LatticeModel& model, const PairField& seed,
                                           double g, double beta, double cutoff,
                                           double tol, int max_iter, double mixing) {
    if (g <= 0.0) throw domain_error("self_consistent_gap: coupling g must be positive");
    if (tol <= 0.0) throw domain_error("self_consistent_gap: tol must be positive");
    if (!(mixing > 0.0 && mixing <= 1.0))
        throw domain_error("self_consistent_gap: mixing must lie in (0, 1]");
    if (cutoff <= 0.0) throw domain_error("self_consistent_gap: cutoff must be positive");

    SelfConsistentSolution sol;
    sol.pair = seed;
    sol.report.coupling_g = g;
    sol.report.cutoff = cutoff;
    const bool track_winding = seed.winding != 0 && !seed.degenerate();
    const int ring = track_winding ? max_enclosing_ring(seed) : 0;

    for (int it = 0; it < max_iter; ++it) {
        sol.spectrum = occupations_at(diagonalize(assemble_bdg(model, sol.pair)), beta);
        const VecXcd d_new = gap_update(sol.spectrum, g, cutoff);
        const double res = (d_new - sol.pair.delta).cwiseAbs().maxCoeff();
        sol.report.residual_history.push_back(res);
        sol.report.iterations = it + 1;

        sol.pair.delta = (1.0 - mixing) * sol.pair.delta + mixing * d_new;
        sol.pair.analytic = false;

        if (track_winding && sol.pair.delta.cwiseAbs().maxCoeff() > 1e-12) {
            const double w = winding_number(sol.pair, sol.pair.center.x(),
                                            sol.pair.center.y(), ring);
            if (std::abs(w - seed.winding) > 0.25)
                throw topology_error(
                    "self_consistent_gap: winding changed from " +
                    std::to_string(seed.winding) + " to " + format_g17(w) +
                    " at iteration " + std::to_string(it + 1) +
                    " (lattice too coarse or disorder too strong)");
        }
        if (res < tol) {
            sol.report.converged = true;
            break;
        }
    }
    // spectrum consistent with the returned (mixed) field
    sol.spectrum = occupations_at(diagonalize(assemble_bdg(model, sol.pair)), beta);
    return sol;
}

double thermodynamic_potential(const LatticeModel& model, const PairField& pair,
                               double g, double beta) {
    const BdGSpectrum s = diagonalize(assemble_bdg(model, pair));
    return pair.delta.squaredNorm() / g + quasiparticle_potential(s.energies, beta);
}

} // namespace vortexlab
