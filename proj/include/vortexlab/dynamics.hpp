#ifndef VORTEXLAB_DYNAMICS_HPP
#define VORTEXLAB_DYNAMICS_HPP

#include <cstdint>
#include <string>

#include "vortexlab/numerics.hpp"

namespace vortexlab {

// Ohmic reduction eta = lim_{w->0} J(w)/w by a least-squares line through the
// origin over (0, omega_fit]; `non_ohmic` flags gapped or strongly nonlinear J.
struct OhmicFit {
    double eta = 0.0;
    double residual = 0.0;        // rms(J - eta w) / rms(J) over the window
    bool non_ohmic = false;
};
OhmicFit ohmic_reduction(const VecXd& omega_grid, const VecXd& j_of_omega, double omega_fit);

enum class DriveKind { none, constant, sinusoidal };

struct Drive {
    DriveKind kind = DriveKind::none;
    Vec2 amplitude = Vec2::Zero();
    double omega = 0.0;           // sinusoidal angular frequency

    Vec2 at(double t) const {
        switch (kind) {
            case DriveKind::none: return Vec2::Zero();
            case DriveKind::constant: return amplitude;
            case DriveKind::sinusoidal: return amplitude * std::cos(omega * t);
        }
        return Vec2::Zero();
    }
};

// Massless classical vortex equation of motion
//     eta v + B (v x z) + K x = F_ext(t)
// i.e. friction + Magnus + pinning balancing the drive.  The optional memory
// kernel gamma(t) replaces eta v by the history convolution int gamma(t-s) v(s) ds.
struct EquationOfMotion {
    double b = 0.0;               // Magnus coefficient
    double k_spring = 0.0;
    double eta = 0.0;             // Ohmic friction
    Drive drive;
    bool massless = true;

    bool use_memory = false;
    VecXd gamma;                  // gamma(t) on the integrator's dt grid
};

// Real-time friction kernel gamma(t) = (2/pi) int dw J(w)/w cos(wt).
VecXd memory_kernel_from_j(const VecXd& omega_grid, const VecXd& j_of_omega,
                           double dt, int n_steps);

struct TrajectoryRecord {
    VecXd times;
    MatXd positions;              // n x 2
    MatXd velocities;             // n x 2
    double dt = 0.0;
    std::string scheme;
};

// Implicit-midpoint integration of the massless EOM (the velocity is algebraic
// in x, so each step solves one 2x2 linear system).  With eta = 0 the update
// is a Cayley rotation: |x| and the pinning energy are conserved to roundoff.
TrajectoryRecord integrate(const EquationOfMotion& eom, Vec2 x_init, double t_final, double dt);

// arctan(B/eta): angle between a constant drive and the steady-state velocity.
double hall_angle(const EquationOfMotion& eom);

} // namespace vortexlab

#endif
