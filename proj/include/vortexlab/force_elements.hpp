#ifndef VORTEXLAB_FORCE_ELEMENTS_HPP
#define VORTEXLAB_FORCE_ELEMENTS_HPP

#include "vortexlab/pair_field.hpp"
#include "vortexlab/spectrum.hpp"

namespace vortexlab {

// Matrix elements (M^a)_{kk'} = <Psi_k| d_{x0,a} H_0 |Psi_k'> of the
// vortex-position gradient of the BdG Hamiltonian.  Only the pairing blocks
// depend on x0, so M^a = U^+ D_a V + V^+ D_a^* U with D_a = diag(d_a Delta).
struct ForceMatrixElements {
    MatXcd mx;
    MatXcd my;
    double fd_step = 0.0;
};

ForceMatrixElements force_matrix_elements(const LatticeModel& model, const PairField& pair,
                                          const BdGSpectrum& spectrum, double fd_step);

} // namespace vortexlab

#endif
