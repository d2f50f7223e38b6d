#include "entsim/tomography.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "entsim/hermitian.hpp"

namespace entsim {

std::pair<CMatrix, CMatrix> rotated_paulis() {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CMatrix sa = pauli_x() + pauli_y();
    sa *= inv_sqrt2;
    CMatrix sb = pauli_y() - pauli_x();
    sb *= inv_sqrt2;
    return {sa, sb};
}

const std::array<CMatrix, 15>& feature_observables() {
    static const std::array<CMatrix, 15> obs = [] {
        const auto [sa, sb] = rotated_paulis();
        const CMatrix& sx = pauli_x();
        const CMatrix& sy = pauli_y();
        const CMatrix& sz = pauli_z();
        const CMatrix& id = identity2();
        return std::array<CMatrix, 15>{
            kron(sx, sa), kron(sx, sb), kron(sy, sa), kron(sy, sb),
            kron(sx, sz), kron(sy, sz), kron(sz, sa), kron(sz, sb),
            kron(sz, sz),
            kron(sx, id), kron(sy, id), kron(sz, id),
            kron(id, sa), kron(id, sb), kron(id, sz)};
    }();
    return obs;
}

FeatureVector extract_features(const DensityOperator& rho) {
    const auto& obs = feature_observables();
    const CMatrix& m = rho.matrix();
    FeatureVector fv;
    for (int i = 0; i < 15; ++i) {
        // tr(rho O) without forming the product matrix.
        Complex t = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) t += m(r, c) * obs[i](c, r);
        if (std::abs(t.imag()) > 1e-10)
            throw std::runtime_error("extract_features: imaginary residue on feature " +
                                     std::to_string(i + 1));
        if (std::abs(t.real()) > 1.0 + 1e-9)
            throw std::runtime_error("extract_features: feature " + std::to_string(i + 1) +
                                     " outside [-1, 1]");
        fv.f[i] = t.real();
    }
    return fv;
}

CMatrix partial_transpose(const CMatrix& rho) {
    CMatrix pt(4);
    // (i,j),(k,l) -> (i,l),(k,j): transpose within each qubit-1-indexed block.
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 2; ++j)
                for (int l = 0; l < 2; ++l)
                    pt(2 * i + j, 2 * k + l) = rho(2 * i + l, 2 * k + j);
    return pt;
}

EntanglementLabel ppt_label(const DensityOperator& rho) {
    const double min_eig = hermitian_eigenvalues(partial_transpose(rho.matrix())).min();
    return {min_eig < -kPptTol, min_eig};
}

double concurrence(const DensityOperator& rho) {
    static const CMatrix yy = kron(pauli_y(), pauli_y());

    const CMatrix rho_tilde = yy * conjugate(rho.matrix()) * yy;
    // PSD tolerance matches the DensityOperator invariant rather than the
    // tighter hermitian_sqrt default.
    const CMatrix root = hermitian_sqrt(rho.matrix(), 1e-9);
    Spectrum lam = hermitian_eigenvalues(root * rho_tilde * root);

    // Eigenvalues at the numerical noise floor are structural zeros; taking
    // their square roots would turn 1e-18 of roundoff into 1e-9 of
    // concurrence error.
    const double floor = std::max(lam.values[0], 0.0) * 1e-14;

    double c = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double l = std::sqrt(lam.values[i] > floor ? lam.values[i] : 0.0);
        c += (i == 0) ? l : -l;
    }
    c = std::max(c, 0.0);
    if (c > 1.0 + 1e-9)
        throw std::runtime_error("concurrence: value above 1 beyond tolerance");
    return std::min(c, 1.0);
}

double concurrence_pure(const PureState& psi) {
    if (std::abs(psi.norm_sq() - 1.0) > 1e-9)
        throw std::invalid_argument("concurrence_pure: state norm differs from 1");
    return 2.0 * std::abs(psi.c[0] * psi.c[3] - psi.c[1] * psi.c[2]);
}

}  // namespace entsim
