#ifndef VORTEXLAB_CONFIG_HPP
#define VORTEXLAB_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vortexlab/dynamics.hpp"
#include "vortexlab/lattice.hpp"

namespace vortexlab {

// Full run configuration.  Parsed from JSON; every field is validated with a
// message naming the offending key.  Zero means "auto" where noted.
struct RunConfig {
    // lattice
    int nx = 16;
    int ny = 16;
    double a = 1.0;
    double t_hop = 1.0;
    double mu = -2.0;
    Boundary boundary = Boundary::open;

    // disorder
    DisorderSpec disorder;
    int ensemble = 1;

    // pairing
    double g = 2.5;
    double bulk_gap_seed = 0.45;
    double xi_seed = 1.5;
    double cutoff = 4.0;            // pair-sum energy window omega_c

    // temperature
    double beta = std::numeric_limits<double>::infinity();

    // vortex
    int q = 1;
    bool center_auto = true;        // plaquette centre of the lattice midpoint
    Vec2 center = Vec2::Zero();

    // numerics
    double sc_tol = 1e-6;
    int sc_max_iter = 200;
    double sc_mixing = 0.5;
    double fd_step = 0.01;
    double state_fd_step = 0.05;
    double eta_b = 0.0;             // 0 = auto: 3x mean level spacing
    double omega_max = 0.0;         // 0 = auto: spectral range + Gaussian margin
    int n_omega = 1600;
    int n_tau = 201;
    double tau_max = 0.0;           // 0 = auto: hbar*beta (finite beta only)
    double degeneracy_tol = 1e-8;
    double cluster_tol = 1e-6;
    double omega_fit = 0.0;         // 0 = auto: 10 x eta_b

    // dynamics
    struct DynamicsConfig {
        std::string source = "config";   // "config" | "kernels"
        double b = 1.0;
        double k_spring = 0.5;
        double eta = 0.1;
        Vec2 x_init = Vec2(0.5, 0.0);
        double t_final = 50.0;
        double dt = 0.01;
        bool memory = false;
        Drive drive;
    } dynamics;

    // output
    std::string out_dir = "out";

    Vec2 vortex_center() const;
    LatticeModel make_lattice() const;
};

// Parse + validate.  Throws config_error listing every violated field.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// Canonical serialization (sorted keys, round-trip-exact numbers) and its
// SHA-256 used as the run identity.
std::string canonical_json(const RunConfig& config);
std::string config_hash(const RunConfig& config);

} // namespace vortexlab

#endif
