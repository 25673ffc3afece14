#ifndef VORTEXLAB_LATTICE_HPP
#define VORTEXLAB_LATTICE_HPP

#include <cstdint>
#include <string>

#include "vortexlab/numerics.hpp"

namespace vortexlab {

enum class Boundary { open, periodic };

enum class DisorderKind { box, gaussian };

// Quenched impurity ensemble parameters.  Same seed => bit-identical draw.
struct DisorderSpec {
    double strength = 0.0;          // V_imp >= 0
    double density = 1.0;           // fraction of sites carrying an impurity
    std::uint64_t seed = 0;
    DisorderKind kind = DisorderKind::box;
};

// 2D single-particle problem: square lattice, 5-point kinetic stencil with
// hopping t = hbar^2/(2 m a^2), chemical potential mu and impurity potential V.
struct LatticeModel {
    int nx = 0;
    int ny = 0;
    double a = 1.0;
    double t_hop = 1.0;
    double mu = 0.0;
    Boundary boundary = Boundary::open;
    VecXd potential;                // V(x), length nx*ny

    int n_sites() const { return nx * ny; }
    int index(int x, int y) const { return x + nx * y; }
    double site_x(int i) const { return a * (i % nx); }
    double site_y(int i) const { return a * (i / nx); }
    // strictly inside the lattice rectangle [0, (nx-1)a] x [0, (ny-1)a]
    bool inside(double cx, double cy) const {
        return cx > 0.0 && cx < a * (nx - 1) && cy > 0.0 && cy < a * (ny - 1);
    }
};

VecXd draw_potential(int n_sites, const DisorderSpec& disorder);

LatticeModel build_lattice(int nx, int ny, double a, double t_hop, double mu,
                           Boundary boundary, const DisorderSpec& disorder);

// Normal-state Hamiltonian H = kinetic stencil + V - mu as a dense real
// symmetric matrix (N x N).  Stencil convention: -t on nearest-neighbour
// bonds and V - mu on the diagonal, so the clean periodic spectrum is
// -2t(cos kx a + cos ky a) - mu.
MatXd normal_hamiltonian(const LatticeModel& model);

} // namespace vortexlab

#endif
