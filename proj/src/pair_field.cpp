#include "vortexlab/pair_field.hpp"

#include <algorithm>
#include <cmath>

#include "vortexlab/errors.hpp"

namespace vortexlab {

namespace {

VecXcd sample_seed_profile(int nx, int ny, double a, Vec2 center, int q,
                           double bulk_gap, double xi) {
    VecXcd d(nx * ny);
    if (q == 0) {                   // uniform, vortex-free field
        d.setConstant(bulk_gap);
        return d;
    }
    for (int y = 0; y < ny; ++y) {
        for (int x = 0; x < nx; ++x) {
            const double rx = a * x - center.x();
            const double ry = a * y - center.y();
            const double r = std::hypot(rx, ry);
            const double th = std::atan2(ry, rx);
            d[x + nx * y] = bulk_gap * std::tanh(r / xi) *
                            std::polar(1.0, q * th);
        }
    }
    return d;
}

} // namespace

bool PairField::degenerate() const {
    return delta.size() == 0 || delta.cwiseAbs().maxCoeff() < 1e-14;
}

PairField seed_pair_field(const LatticeModel& model, Vec2 center, int q,
                          double bulk_gap, double xi) {
    if (!model.inside(center.x(), center.y()))
        throw domain_error("seed_pair_field: center outside lattice");
    if (xi <= 0.0)
        throw domain_error("seed_pair_field: coherence_length must be positive");
    if (q != 1 && q != -1 && q != 0)
        throw domain_error("seed_pair_field: winding must be -1, 0 or +1");
    if (bulk_gap < 0.0)
        throw domain_error("seed_pair_field: bulk_gap must be non-negative");
    if (model.boundary == Boundary::periodic && q != 0 && bulk_gap > 0.0)
        throw domain_error("seed_pair_field: a single vortex is inconsistent with "
                           "periodic boundary; use open boundary or winding 0");
    PairField p;
    p.delta = sample_seed_profile(model.nx, model.ny, model.a, center, q, bulk_gap, xi);
    p.center = center;
    p.winding = q;
    p.bulk_gap = bulk_gap;
    p.coherence_length = xi;
    p.nx = model.nx;
    p.ny = model.ny;
    p.a = model.a;
    p.analytic = true;
    return p;
}

PairField displace_pair_field(const PairField& pair, Vec2 dx) {
    const int nx = pair.nx, ny = pair.ny;
    const double a = pair.a;
    const Vec2 c = pair.center + dx;
    const double lo = 2.0 * a;
    if (c.x() < lo || c.y() < lo || c.x() > a * (nx - 1) - lo || c.y() > a * (ny - 1) - lo)
        throw domain_error("displace_pair_field: displaced center within 2a of boundary");

    PairField out = pair;
    out.center = c;
    if (pair.analytic) {
        out.delta = sample_seed_profile(nx, ny, a, c, pair.winding,
                                        pair.bulk_gap, pair.coherence_length);
        return out;
    }

    // numeric field: split off the singular phase, interpolate the rest
    const int q = pair.winding;
    VecXd amp2(nx * ny);
    VecXcd dir(nx * ny);               // unit-modulus smooth phase factor
    for (int y = 0; y < ny; ++y) {
        for (int x = 0; x < nx; ++x) {
            const int i = x + nx * y;
            const double th = std::atan2(a * y - pair.center.y(), a * x - pair.center.x());
            const cplx s = pair.delta[i] * std::polar(1.0, -q * th);
            const double m = std::abs(s);
            amp2[i] = m * m;
            dir[i] = m > 1e-300 ? s / m : cplx(1.0, 0.0);
        }
    }

    auto bilinear = [&](auto&& grid, double fx, double fy) {
        int x0 = std::clamp(static_cast<int>(std::floor(fx)), 0, nx - 2);
        int y0 = std::clamp(static_cast<int>(std::floor(fy)), 0, ny - 2);
        double tx = std::clamp(fx - x0, 0.0, 1.0);
        double ty = std::clamp(fy - y0, 0.0, 1.0);
        return grid(x0, y0) * ((1 - tx) * (1 - ty)) + grid(x0 + 1, y0) * (tx * (1 - ty)) +
               grid(x0, y0 + 1) * ((1 - tx) * ty) + grid(x0 + 1, y0 + 1) * (tx * ty);
    };
    auto amp2_at = [&](int x, int y) { return amp2[x + nx * y]; };
    auto dir_at = [&](int x, int y) { return dir[x + nx * y]; };

    out.delta.resize(nx * ny);
    for (int y = 0; y < ny; ++y) {
        for (int x = 0; x < nx; ++x) {
            const double fx = (a * x - dx.x()) / a;
            const double fy = (a * y - dx.y()) / a;
            const double a2 = std::max(bilinear(amp2_at, fx, fy), 0.0);
            cplx s = bilinear(dir_at, fx, fy);
            const double sn = std::abs(s);
            s = sn > 1e-300 ? s / sn : cplx(1.0, 0.0);
            const double th = std::atan2(a * y - c.y(), a * x - c.x());
            out.delta[x + nx * y] = std::sqrt(a2) * s * std::polar(1.0, q * th);
        }
    }
    return out;
}

VecXcd pair_field_gradient(const PairField& pair, int axis, double step) {
    if (axis != 0 && axis != 1) throw domain_error("pair_field_gradient: axis must be 0 or 1");
    if (step <= 0.0) throw domain_error("pair_field_gradient: step must be positive");
    Vec2 e = Vec2::Zero();
    e[axis] = step;
    const PairField plus = displace_pair_field(pair, e);
    const PairField minus = displace_pair_field(pair, -e);
    return (plus.delta - minus.delta) / (2.0 * step);
}

double winding_number(const PairField& pair, double cx, double cy, int ring) {
    const int nx = pair.nx, ny = pair.ny;
    const double a = pair.a;
    const int x0 = static_cast<int>(std::floor(cx / a));
    const int y0 = static_cast<int>(std::floor(cy / a));
    const int xl = x0 - ring + 1, xr = x0 + ring;
    const int yl = y0 - ring + 1, yr = y0 + ring;
    if (xl < 0 || yl < 0 || xr >= nx || yr >= ny)
        throw domain_error("winding_number: ring extends outside lattice");

    std::vector<int> loop;
    for (int x = xl; x <= xr; ++x) loop.push_back(x + nx * yl);
    for (int y = yl + 1; y <= yr; ++y) loop.push_back(xr + nx * y);
    for (int x = xr - 1; x >= xl; --x) loop.push_back(x + nx * yr);
    for (int y = yr - 1; y > yl; --y) loop.push_back(xl + nx * y);
    loop.push_back(loop.front());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
        const cplx z0 = pair.delta[loop[i]];
        const cplx z1 = pair.delta[loop[i + 1]];
        if (std::abs(z0) < 1e-300 || std::abs(z1) < 1e-300)
            throw numeric_error("winding_number: field vanishes on the loop");
        total += principal_angle(std::arg(z1) - std::arg(z0));
    }
    return total / (2.0 * M_PI);
}

int max_enclosing_ring(const PairField& pair) {
    const double a = pair.a;
    const int x0 = static_cast<int>(std::floor(pair.center.x() / a));
    const int y0 = static_cast<int>(std::floor(pair.center.y() / a));
    const int room = std::min(std::min(x0, pair.nx - 2 - x0), std::min(y0, pair.ny - 2 - y0));
    return std::max(room, 1);
}

} // namespace vortexlab
