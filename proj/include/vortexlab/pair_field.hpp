#ifndef VORTEXLAB_PAIR_FIELD_HPP
#define VORTEXLAB_PAIR_FIELD_HPP

#include <vector>

#include "vortexlab/lattice.hpp"
#include "vortexlab/numerics.hpp"

namespace vortexlab {

// Complex order parameter with a single vortex at `center` of winding q.
// `analytic` marks the closed-form seed profile tanh(r/xi) e^{i q theta};
// self-consistency replaces it with a numeric field (displacement then
// resamples amplitude and winding-corrected phase from the grid).
struct PairField {
    VecXcd delta;
    Vec2 center = Vec2::Zero();
    int winding = +1;
    double bulk_gap = 0.0;
    double coherence_length = 1.0;
    int nx = 0;
    int ny = 0;
    double a = 1.0;
    bool analytic = true;

    bool degenerate() const;        // identically zero field, winding undefined
};

PairField seed_pair_field(const LatticeModel& model, Vec2 center, int q,
                          double bulk_gap, double xi);

// Rigid displacement of the vortex-centred field by dx: the profile is
// re-evaluated about center+dx (analytic seed) or resampled by bilinear
// interpolation of |Delta|^2 and of the winding-corrected phase (numeric).
// |Delta|^2 rather than |Delta| because the amplitude has a cone at the
// core while its square is smooth there.
PairField displace_pair_field(const PairField& pair, Vec2 dx);

// Central finite-difference del_{x0} Delta along lattice axis `axis`.
VecXcd pair_field_gradient(const PairField& pair, int axis, double step);

// Accumulated phase winding (units of 2*pi) around the axis-aligned square
// ring of half-width `ring` lattice cells enclosing (cx, cy).
double winding_number(const PairField& pair, double cx, double cy, int ring);

// Largest square ring around the field's own centre that fits the lattice.
int max_enclosing_ring(const PairField& pair);

} // namespace vortexlab

#endif
