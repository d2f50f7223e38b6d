#pragma once

#include <vector>

#include "entsim/cmatrix.hpp"

namespace entsim {

/// Real eigenvalues in descending order.
struct Spectrum {
    std::vector<double> values;

    double min() const { return values.back(); }
    double max() const { return values.front(); }
};

/// Eigenvalues (descending) paired with eigenvector columns of `vectors`.
struct EigenSystem {
    std::vector<double> values;
    CMatrix vectors;
};

inline constexpr double kHermitianTol = 1e-10;
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiOffDiagTol = 1e-12;

/// Diagonalizes a Hermitian 2x2 or 4x4 matrix with cyclic complex Jacobi
/// rotations. Throws std::invalid_argument when the input is not Hermitian
/// within kHermitianTol, std::runtime_error when the off-diagonal norm has
/// not dropped below kJacobiOffDiagTol after kJacobiMaxSweeps sweeps.
EigenSystem hermitian_eigensystem(const CMatrix& h);

Spectrum hermitian_eigenvalues(const CMatrix& h);

/// Hermitian PSD square root: S with S*S == h. Eigenvalues in
/// [-psd_tol, 0) are clamped to zero; anything below -psd_tol throws.
CMatrix hermitian_sqrt(const CMatrix& h, double psd_tol = 1e-10);

}  // namespace entsim
