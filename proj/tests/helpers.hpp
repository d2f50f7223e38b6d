#pragma once

#include <cmath>

#include "entsim/cmatrix.hpp"
#include "entsim/rng.hpp"
#include "entsim/states.hpp"

namespace entsim::test {

inline CMatrix random_matrix(int dim, Rng& rng) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = rng.standard_normal_complex();
    return m;
}

inline CMatrix random_hermitian(int dim, Rng& rng) {
    const CMatrix a = random_matrix(dim, rng);
    CMatrix h = a + dagger(a);
    h *= Complex(0.5);
    return h;
}

inline PureState random_pure(Rng& rng) {
    PureState psi{};
    double nrm = 0.0;
    for (Complex& c : psi.c) {
        c = rng.standard_normal_complex();
        nrm += std::norm(c);
    }
    nrm = std::sqrt(nrm);
    for (Complex& c : psi.c) c /= nrm;
    return psi;
}

inline DensityOperator random_density(Rng& rng) { return random_mixed_qr(rng, 1.0); }

/// Cofactor-expansion determinant, independent of the Jacobi path; the
/// characteristic-polynomial oracle for small eigenproblems.
inline Complex determinant(const CMatrix& m) {
    const int n = m.dim();
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    // n == 4: Laplace over the first row with explicit 3x3 determinants.
    Complex det = 0.0;
    for (int c = 0; c < n; ++c) {
        int cols[3], ci = 0;
        for (int j = 0; j < n; ++j)
            if (j != c) cols[ci++] = j;
        const Complex d3 =
            m(1, cols[0]) * (m(2, cols[1]) * m(3, cols[2]) - m(2, cols[2]) * m(3, cols[1])) -
            m(1, cols[1]) * (m(2, cols[0]) * m(3, cols[2]) - m(2, cols[2]) * m(3, cols[0])) +
            m(1, cols[2]) * (m(2, cols[0]) * m(3, cols[1]) - m(2, cols[1]) * m(3, cols[0]));
        det += ((c % 2 == 0) ? 1.0 : -1.0) * m(0, c) * d3;
    }
    return det;
}

/// det(m - lambda I); roots are the eigenvalues.
inline Complex char_poly(const CMatrix& m, double lambda) {
    CMatrix shifted = m;
    for (int i = 0; i < m.dim(); ++i) shifted(i, i) -= lambda;
    return determinant(shifted);
}

}  // namespace entsim::test
