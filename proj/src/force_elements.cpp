#include "vortexlab/force_elements.hpp"

#include "vortexlab/errors.hpp"

namespace vortexlab {

namespace {

MatXcd pairing_block_elements(const BdGSpectrum& spectrum, const VecXcd& grad) {
    const auto u = spectrum.u_block();
    const auto v = spectrum.v_block();
    return u.adjoint() * (grad.asDiagonal() * v) +
           v.adjoint() * (grad.conjugate().asDiagonal() * u);
}

} // namespace

ForceMatrixElements force_matrix_elements(const LatticeModel& model, const PairField& pair,
                                          const BdGSpectrum& spectrum, double fd_step) {
    if (spectrum.dim() != 2 * model.n_sites())
        throw domain_error("force_matrix_elements: spectrum does not match lattice");
    if (fd_step <= 0.0)
        throw domain_error("force_matrix_elements: fd_step must be positive");

    ForceMatrixElements fme;
    fme.fd_step = fd_step;
    const VecXcd gx = pair_field_gradient(pair, 0, fd_step);
    const VecXcd gy = pair_field_gradient(pair, 1, fd_step);
    fme.mx = pairing_block_elements(spectrum, gx);
    fme.my = pairing_block_elements(spectrum, gy);

    const double scale = std::max({fme.mx.cwiseAbs().maxCoeff(),
                                   fme.my.cwiseAbs().maxCoeff(), 1e-300});
    const double defect = std::max((fme.mx - fme.mx.adjoint()).cwiseAbs().maxCoeff(),
                                   (fme.my - fme.my.adjoint()).cwiseAbs().maxCoeff());
    if (defect > 1e-8 * scale)
        throw numeric_error("force_matrix_elements: Hermiticity violated (defect " +
                            format_g17(defect / scale) + " relative); use a smaller fd_step");
    return fme;
}

} // namespace vortexlab
