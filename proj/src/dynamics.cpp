#include "vortexlab/dynamics.hpp"

#include <cmath>

#include "vortexlab/errors.hpp"

namespace vortexlab {

OhmicFit ohmic_reduction(const VecXd& omega_grid, const VecXd& j_of_omega, double omega_fit) {
    if (omega_grid.size() != j_of_omega.size() || omega_grid.size() < 2)
        throw domain_error("ohmic_reduction: bad grid");
    if (omega_fit <= 0.0) throw domain_error("ohmic_reduction: omega_fit must be positive");

    double sww = 0.0, swj = 0.0;
    int used = 0;
    for (int i = 0; i < omega_grid.size(); ++i) {
        const double w = omega_grid[i];
        if (w <= 0.0 || w > omega_fit) continue;
        sww += w * w;
        swj += w * j_of_omega[i];
        ++used;
    }
    OhmicFit fit;
    if (used < 2) {
        fit.non_ohmic = true;
        return fit;
    }
    fit.eta = swj / sww;

    double ss_res = 0.0, ss_j = 0.0;
    for (int i = 0; i < omega_grid.size(); ++i) {
        const double w = omega_grid[i];
        if (w <= 0.0 || w > omega_fit) continue;
        const double r = j_of_omega[i] - fit.eta * w;
        ss_res += r * r;
        ss_j += j_of_omega[i] * j_of_omega[i];
    }
    const double j_total = j_of_omega.cwiseAbs().maxCoeff();
    if (ss_j > 0.0) fit.residual = std::sqrt(ss_res / ss_j);
    // gapped: essentially no weight in the window although J has weight elsewhere
    const bool window_empty = std::sqrt(ss_j / used) < 1e-10 * std::max(j_total, 1e-300);
    fit.non_ohmic = window_empty ? j_total > 0.0 : fit.residual > 0.5;
    return fit;
}

VecXd memory_kernel_from_j(const VecXd& omega_grid, const VecXd& j_of_omega,
                           double dt, int n_steps) {
    if (omega_grid.size() != j_of_omega.size() || omega_grid.size() < 2)
        throw domain_error("memory_kernel_from_j: bad grid");
    VecXd gamma(n_steps);
    VecXd integrand(omega_grid.size());
    for (int n = 0; n < n_steps; ++n) {
        const double t = n * dt;
        for (int i = 0; i < omega_grid.size(); ++i) {
            const double w = omega_grid[i];
            const double jw = w > 0.0 ? j_of_omega[i] / w
                                      : (omega_grid[i + 1] > 0.0 ? j_of_omega[i + 1] / omega_grid[i + 1] : 0.0);
            integrand[i] = jw * std::cos(w * t);
        }
        gamma[n] = (2.0 / M_PI) * trapezoid(omega_grid, integrand);
    }
    return gamma;
}

namespace {

// (eta I - B Jz) with Jz the 90-degree rotation; v x z = -Jz v, so
// eta v + B v x z = (eta I - B Jz) v.
Eigen::Matrix2d response_matrix(double eta, double b) {
    Eigen::Matrix2d m;
    m << eta, b, -b, eta;
    return m;
}

} // namespace

TrajectoryRecord integrate(const EquationOfMotion& eom, Vec2 x_init, double t_final, double dt) {
    if (dt <= 0.0 || t_final <= 0.0)
        throw domain_error("integrate: dt and t_final must be positive");
    if (eom.b == 0.0 && eom.eta == 0.0 && !eom.use_memory)
        throw domain_error("integrate: no dynamics defined without transverse or dissipative response");
    if (!eom.massless)
        throw domain_error("integrate: only the massless equation of motion is implemented");

    // fastest dynamical rate must be resolved
    const double denom = std::hypot(eom.b, eom.eta);
    double rate = denom > 0.0 ? std::abs(eom.k_spring) / denom : 0.0;
    if (eom.drive.kind == DriveKind::sinusoidal) rate = std::max(rate, std::abs(eom.drive.omega));
    if (rate > 0.0 && dt > 0.1 / rate)
        throw domain_error("integrate: dt too coarse; need dt <= 0.1/rate with rate = " +
                           format_g17(rate));

    const int n_steps = static_cast<int>(std::ceil(t_final / dt));
    TrajectoryRecord rec;
    rec.dt = dt;
    rec.times.resize(n_steps + 1);
    rec.positions.resize(n_steps + 1, 2);
    rec.velocities.resize(n_steps + 1, 2);

    const double k = eom.k_spring;

    if (!eom.use_memory) {
        rec.scheme = "implicit-midpoint";
        const Eigen::Matrix2d a_inv = response_matrix(eom.eta, eom.b).inverse();
        auto velocity = [&](const Vec2& x, double t) -> Vec2 {
            return a_inv * (eom.drive.at(t) - k * x);
        };
        Vec2 x = x_init;
        rec.times[0] = 0.0;
        rec.positions.row(0) = x.transpose();
        rec.velocities.row(0) = velocity(x, 0.0).transpose();
        // x_{n+1} = x_n + dt A^{-1} (F(t+dt/2) - K (x_n + x_{n+1})/2)
        const Eigen::Matrix2d lhs =
            Eigen::Matrix2d::Identity() + 0.5 * dt * k * a_inv;
        const Eigen::Matrix2d lhs_inv = lhs.inverse();
        for (int n = 1; n <= n_steps; ++n) {
            const double t_mid = (n - 0.5) * dt;
            const Vec2 rhs = x + dt * (a_inv * (eom.drive.at(t_mid) - 0.5 * k * x));
            x = lhs_inv * rhs;
            rec.times[n] = n * dt;
            rec.positions.row(n) = x.transpose();
            rec.velocities.row(n) = velocity(x, n * dt).transpose();
        }
        return rec;
    }

    // memory variant: trapezoidal history convolution, Heun position update
    rec.scheme = "memory-heun";
    if (eom.gamma.size() < n_steps + 1)
        throw domain_error("integrate: memory kernel shorter than the trajectory");
    std::vector<Vec2> vs;
    vs.reserve(n_steps + 1);
    auto solve_v = [&](const Vec2& x, double t, int n) -> Vec2 {
        // sum_{j<n} w_j gamma(t_n - t_j) v_j + [gamma(0) dt/2 I - B Jz] v_n = F - K x
        Vec2 hist = Vec2::Zero();
        for (int jj = 0; jj < n; ++jj) {
            const double w = jj == 0 ? 0.5 * dt : dt;
            hist += w * eom.gamma[n - jj] * vs[jj];
        }
        const Eigen::Matrix2d a = response_matrix(0.5 * dt * eom.gamma[0], eom.b);
        return a.inverse() * (eom.drive.at(t) - k * x - hist);
    };
    Vec2 x = x_init;
    rec.times[0] = 0.0;
    rec.positions.row(0) = x.transpose();
    Vec2 v = solve_v(x, 0.0, 0);
    vs.push_back(v);
    rec.velocities.row(0) = v.transpose();
    for (int n = 1; n <= n_steps; ++n) {
        const Vec2 x_pred = x + dt * vs[n - 1];
        vs.push_back(Vec2::Zero());            // placeholder for v_n during the solve
        const Vec2 v_pred = solve_v(x_pred, n * dt, n);
        x = x + 0.5 * dt * (vs[n - 1] + v_pred);
        const Vec2 v_corr = solve_v(x, n * dt, n);
        vs[n] = v_corr;
        rec.times[n] = n * dt;
        rec.positions.row(n) = x.transpose();
        rec.velocities.row(n) = v_corr.transpose();
    }
    return rec;
}

double hall_angle(const EquationOfMotion& eom) {
    if (eom.b == 0.0 && eom.eta == 0.0)
        throw domain_error("hall_angle: B and eta cannot both vanish");
    return std::atan2(eom.b, eom.eta);
}

} // namespace vortexlab
