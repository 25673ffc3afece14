#include "vortexlab/bdg.hpp"

#include "vortexlab/errors.hpp"

namespace vortexlab {

MatXcd assemble_bdg(const LatticeModel& model, const PairField& pair) {
    const int n = model.n_sites();
    if (pair.delta.size() != n || pair.nx != model.nx || pair.ny != model.ny)
        throw domain_error("assemble_bdg: pair field not defined on this lattice");
    const MatXd h = normal_hamiltonian(model);
    MatXcd m = MatXcd::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n) = h.cast<cplx>();
    m.bottomRightCorner(n, n) = (-h).cast<cplx>();   // -H* = -H, H real
    for (int i = 0; i < n; ++i) {
        m(i, n + i) = pair.delta[i];
        m(n + i, i) = std::conj(pair.delta[i]);
    }
    return m;
}

double hermiticity_defect(const MatXcd& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double ph_anticommutation_defect(const MatXcd& m) {
    const int n = static_cast<int>(m.rows()) / 2;
    // P M P^{-1} = U M* U^dagger with U = [[0, -1], [1, 0]] in Nambu blocks
    MatXcd mc = m.conjugate();
    MatXcd pmp(2 * n, 2 * n);
    pmp.topLeftCorner(n, n) = mc.bottomRightCorner(n, n);
    pmp.topRightCorner(n, n) = -mc.bottomLeftCorner(n, n);
    pmp.bottomLeftCorner(n, n) = -mc.topRightCorner(n, n);
    pmp.bottomRightCorner(n, n) = mc.topLeftCorner(n, n);
    return (pmp + m).cwiseAbs().maxCoeff();
}

} // namespace vortexlab
