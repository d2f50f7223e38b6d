#include "entsim/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace entsim {

namespace {

double off_diagonal_max(const CMatrix& m) {
    double v = 0.0;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            if (i != j) v = std::max(v, std::abs(m(i, j)));
    return v;
}

// One Jacobi rotation zeroing the (p,q) entry. U is identity outside the
// (p,q) plane; updates a <- U^dag a U and v <- v U.
void rotate(CMatrix& a, CMatrix& v, int p, int q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;

    const Complex phase = apq / mag;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * mag);

    // Smaller-magnitude root of t^2 - 2*tau*t - 1 = 0.
    double t;
    if (tau > 0.0)
        t = -1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else if (tau < 0.0)
        t = 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    else
        t = 1.0;

    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    CMatrix u = CMatrix::identity(a.dim());
    u(p, p) = c;
    u(p, q) = -s * phase;
    u(q, p) = s * std::conj(phase);
    u(q, q) = c;

    a = dagger(u) * a * u;
    v = v * u;
}

}  // namespace

EigenSystem hermitian_eigensystem(const CMatrix& h) {
    if (!h.all_finite())
        throw std::invalid_argument("hermitian_eigensystem: non-finite entries");
    if (!is_hermitian(h, kHermitianTol))
        throw std::invalid_argument("hermitian_eigensystem: input is not Hermitian");

    const int n = h.dim();

    // Symmetrize exactly so roundoff in the input cannot leak into the sweep.
    CMatrix a(n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = h(i, i).real();
        for (int j = i + 1; j < n; ++j) {
            const Complex m = 0.5 * (h(i, j) + std::conj(h(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
    }

    CMatrix v = CMatrix::identity(n);
    bool converged = false;
    for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
        if (off_diagonal_max(a) <= kJacobiOffDiagTol) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }
    if (!converged && off_diagonal_max(a) > kJacobiOffDiagTol)
        throw std::runtime_error("hermitian_eigensystem: Jacobi sweep cap reached");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    EigenSystem es{std::vector<double>(n), CMatrix(n)};
    for (int k = 0; k < n; ++k) {
        es.values[k] = a(order[k], order[k]).real();
        for (int r = 0; r < n; ++r) es.vectors(r, k) = v(r, order[k]);
    }
    return es;
}

Spectrum hermitian_eigenvalues(const CMatrix& h) {
    return Spectrum{hermitian_eigensystem(h).values};
}

CMatrix hermitian_sqrt(const CMatrix& h, double psd_tol) {
    EigenSystem es = hermitian_eigensystem(h);
    const int n = h.dim();

    std::vector<double> roots(n);
    for (int k = 0; k < n; ++k) {
        double lam = es.values[k];
        if (lam < -psd_tol)
            throw std::invalid_argument("hermitian_sqrt: input is not positive semidefinite");
        roots[k] = std::sqrt(std::max(lam, 0.0));
    }

    CMatrix s(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += es.vectors(i, k) * roots[k] * std::conj(es.vectors(j, k));
            s(i, j) = acc;
        }
    return s;
}

}  // namespace entsim
