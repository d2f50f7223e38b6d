#include "entsim/cmatrix.hpp"

#include <cmath>
#include <stdexcept>

namespace entsim {

namespace {

void check_dim(int dim) {
    if (dim != 2 && dim != 4)
        throw std::invalid_argument("CMatrix dimension must be 2 or 4");
}

}  // namespace

CMatrix::CMatrix(int dim) : dim_(dim) {
    check_dim(dim);
}

CMatrix CMatrix::identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::from_rows(int dim, std::initializer_list<Complex> entries) {
    check_dim(dim);
    if (static_cast<int>(entries.size()) != dim * dim)
        throw std::invalid_argument("CMatrix::from_rows: entry count must be dim*dim");
    CMatrix m(dim);
    int i = 0;
    for (Complex z : entries) m.a_[i++] = z;
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
    for (int i = 0; i < dim_ * dim_; ++i) a_[i] += o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
    for (int i = 0; i < dim_ * dim_; ++i) a_[i] -= o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
    for (int i = 0; i < dim_ * dim_; ++i) a_[i] *= s;
    return *this;
}

bool CMatrix::all_finite() const {
    for (int i = 0; i < dim_ * dim_; ++i)
        if (!std::isfinite(a_[i].real()) || !std::isfinite(a_[i].imag())) return false;
    return true;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, Complex s) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
    const int n = a.dim();
    CMatrix c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

CMatrix dagger(const CMatrix& m) {
    CMatrix d(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) d(i, j) = std::conj(m(j, i));
    return d;
}

CMatrix conjugate(const CMatrix& m) {
    CMatrix c(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) c(i, j) = std::conj(m(i, j));
    return c;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    if (a.dim() != 2 || b.dim() != 2)
        throw std::invalid_argument("kron expects two 2x2 matrices");
    CMatrix k(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    k(2 * i + r, 2 * j + c) = a(i, j) * b(r, c);
    return k;
}

Complex trace(const CMatrix& m) {
    Complex t = 0.0;
    for (int i = 0; i < m.dim(); ++i) t += m(i, i);
    return t;
}

double max_abs(const CMatrix& m) {
    double v = 0.0;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) v = std::max(v, std::abs(m(i, j)));
    return v;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
    double v = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) v = std::max(v, std::abs(a(i, j) - b(i, j)));
    return v;
}

bool is_hermitian(const CMatrix& m, double tol) {
    for (int i = 0; i < m.dim(); ++i)
        for (int j = i; j < m.dim(); ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    return true;
}

const CMatrix& pauli_x() {
    static const CMatrix m = CMatrix::from_rows(2, {0.0, 1.0, 1.0, 0.0});
    return m;
}

const CMatrix& pauli_y() {
    static const CMatrix m =
        CMatrix::from_rows(2, {0.0, Complex(0, -1), Complex(0, 1), 0.0});
    return m;
}

const CMatrix& pauli_z() {
    static const CMatrix m = CMatrix::from_rows(2, {1.0, 0.0, 0.0, -1.0});
    return m;
}

const CMatrix& identity2() {
    static const CMatrix m = CMatrix::identity(2);
    return m;
}

const CMatrix& identity4() {
    static const CMatrix m = CMatrix::identity(4);
    return m;
}

}  // namespace entsim
