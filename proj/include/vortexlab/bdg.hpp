#ifndef VORTEXLAB_BDG_HPP
#define VORTEXLAB_BDG_HPP

#include "vortexlab/lattice.hpp"
#include "vortexlab/pair_field.hpp"

namespace vortexlab {

// Bogoliubov-de Gennes matrix [[H, D], [D*, -H]] with H the real normal-state
// block and D = diag(Delta).  Hermitian by construction; anticommutes with the
// particle-hole operator P = (i sigma_y (x) 1) K, which maps eigenpairs
// (E, (u,v)) -> (-E, (-v*, u*)).
MatXcd assemble_bdg(const LatticeModel& model, const PairField& pair);

// max |M - M^dagger| over entries
double hermiticity_defect(const MatXcd& m);

// max |P M P^{-1} + M| over entries for P = (i sigma_y (x) 1) K
double ph_anticommutation_defect(const MatXcd& m);

} // namespace vortexlab

#endif
