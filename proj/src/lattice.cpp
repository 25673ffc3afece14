#include "vortexlab/lattice.hpp"

#include <random>

#include "vortexlab/errors.hpp"

namespace vortexlab {

VecXd draw_potential(int n_sites, const DisorderSpec& disorder) {
    if (disorder.strength < 0.0)
        throw config_error("disorder.strength must be non-negative");
    if (disorder.density < 0.0 || disorder.density > 1.0)
        throw config_error("disorder.density must lie in [0,1]");
    VecXd v = VecXd::Zero(n_sites);
    if (disorder.strength == 0.0) return v;
    // separate streams: the carried-site pattern is fixed by the seed alone,
    // independent of the amplitude distribution (gaussian caches draws)
    std::mt19937_64 rng_select(disorder.seed);
    std::mt19937_64 rng_amp(disorder.seed ^ 0x9E3779B97F4A7C15ULL);
    std::uniform_real_distribution<double> site_pick(0.0, 1.0);
    std::uniform_real_distribution<double> box(-disorder.strength, disorder.strength);
    std::normal_distribution<double> gauss(0.0, disorder.strength);
    for (int i = 0; i < n_sites; ++i) {
        const bool carry = site_pick(rng_select) < disorder.density;
        if (!carry) continue;
        v[i] = disorder.kind == DisorderKind::box ? box(rng_amp) : gauss(rng_amp);
    }
    return v;
}

LatticeModel build_lattice(int nx, int ny, double a, double t_hop, double mu,
                           Boundary boundary, const DisorderSpec& disorder) {
    if (nx < 4 || ny < 4)
        throw config_error("lattice.nx and lattice.ny must both be >= 4");
    if (t_hop <= 0.0)
        throw config_error("lattice.t_hop must be positive");
    if (a <= 0.0)
        throw config_error("lattice.a must be positive");
    LatticeModel m;
    m.nx = nx;
    m.ny = ny;
    m.a = a;
    m.t_hop = t_hop;
    m.mu = mu;
    m.boundary = boundary;
    m.potential = draw_potential(nx * ny, disorder);
    return m;
}

MatXd normal_hamiltonian(const LatticeModel& model) {
    const int nx = model.nx, ny = model.ny, n = model.n_sites();
    MatXd h = MatXd::Zero(n, n);
    const double t = model.t_hop;
    for (int y = 0; y < ny; ++y) {
        for (int x = 0; x < nx; ++x) {
            const int i = model.index(x, y);
            h(i, i) = model.potential[i] - model.mu;
            if (x + 1 < nx) {
                const int j = model.index(x + 1, y);
                h(i, j) = h(j, i) = -t;
            } else if (model.boundary == Boundary::periodic) {
                const int j = model.index(0, y);
                h(i, j) = h(j, i) = -t;
            }
            if (y + 1 < ny) {
                const int j = model.index(x, y + 1);
                h(i, j) = h(j, i) = -t;
            } else if (model.boundary == Boundary::periodic) {
                const int j = model.index(x, 0);
                h(i, j) = h(j, i) = -t;
            }
        }
    }
    return h;
}

} // namespace vortexlab
