#ifndef VORTEXLAB_NUMERICS_HPP
#define VORTEXLAB_NUMERICS_HPP

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <string>
#include <vector>

namespace vortexlab {

using VecXd = Eigen::VectorXd;
using VecXcd = Eigen::VectorXcd;
using MatXd = Eigen::MatrixXd;
using MatXcd = Eigen::MatrixXcd;
using Vec2 = Eigen::Vector2d;
using cplx = std::complex<double>;

VecXd linspace(double lo, double hi, int n);

// Trapezoidal rule on a (possibly non-uniform) ascending grid.
double trapezoid(const VecXd& x, const VecXd& y);

// cosh[w(hbar*beta/2 - tau)] / sinh[w*hbar*beta/2] evaluated through
// exponentials of non-positive arguments only, so it never overflows for
// 0 <= tau <= hbar*beta.  beta may be +infinity (limit exp(-w*tau)).
double cosh_sinh_ratio(double omega, double tau, double beta);

// Fixed 17-significant-digit printing; round-trips doubles exactly.
std::string format_g17(double v);

// Wrap angle difference to (-pi, pi].
double principal_angle(double a);

} // namespace vortexlab

#endif
