#ifndef VORTEXLAB_SELF_CONSISTENCY_HPP
#define VORTEXLAB_SELF_CONSISTENCY_HPP

#include <vector>

#include "vortexlab/bdg.hpp"
#include "vortexlab/spectrum.hpp"

namespace vortexlab {

struct SelfConsistencyReport {
    int iterations = 0;
    std::vector<double> residual_history;   // max-site |D_new - D_old| per iteration
    bool converged = false;
    double coupling_g = 0.0;
    double cutoff = 0.0;
};

struct SelfConsistentSolution {
    PairField pair;
    BdGSpectrum spectrum;
    SelfConsistencyReport report;
};

// Gap-equation fixed point D(x) = g sum_{0 < E_k < cutoff} u_k v_k^* (1-2f_k)
// with linear mixing.  The seed's winding is asserted on every iteration
// (topology_error on change); non-convergence returns converged=false.
SelfConsistentSolution self_consistent_gap(const LatticeModel& model, const PairField& seed,
                                           double g, double beta, double cutoff,
                                           double tol = 1e-6, int max_iter = 200,
                                           double mixing = 0.5);

// One application of the gap map to an existing spectrum.
VecXcd gap_update(const BdGSpectrum& spectrum, double g, double cutoff);

// Mean-field thermodynamic potential (up to the Delta-independent Tr H term):
// sum_x |Delta|^2 / g + quasiparticle potential of the assembled matrix.
double thermodynamic_potential(const LatticeModel& model, const PairField& pair,
                               double g, double beta);

} // namespace vortexlab

#endif
