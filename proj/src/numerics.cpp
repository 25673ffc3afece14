#include "vortexlab/numerics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "vortexlab/errors.hpp"

namespace vortexlab {

VecXd linspace(double lo, double hi, int n) {
    if (n < 2) throw domain_error("linspace: need at least 2 points");
    VecXd v(n);
    const double h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) v[i] = lo + h * i;
    v[n - 1] = hi;
    return v;
}

double trapezoid(const VecXd& x, const VecXd& y) {
    if (x.size() != y.size()) throw domain_error("trapezoid: grid/value size mismatch");
    double s = 0.0;
    for (int i = 0; i + 1 < x.size(); ++i) s += 0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]);
    return s;
}

double cosh_sinh_ratio(double omega, double tau, double beta) {
    if (omega <= 0.0) throw domain_error("cosh_sinh_ratio: omega must be positive");
    tau = std::abs(tau);
    if (std::isinf(beta)) return std::exp(-omega * tau);
    const double b = 0.5 * omega * beta;      // sinh argument
    const double a = b - omega * tau;         // cosh argument, |a| <= b
    // cosh(a)/sinh(b) = (e^{a-b} + e^{-a-b}) / (1 - e^{-2b})
    const double num = std::exp(a - b) + std::exp(-a - b);
    const double den = -std::expm1(-2.0 * b);
    return num / den;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double principal_angle(double a) {
    const double pi = M_PI;
    while (a > pi) a -= 2 * pi;
    while (a <= -pi) a += 2 * pi;
    return a;
}

} // namespace vortexlab
