#pragma once

#include <array>
#include <complex>
#include <initializer_list>

namespace entsim {

using Complex = std::complex<double>;

/// Dense complex matrix of dimension 2 or 4, row-major.
/// Small enough to live on the stack; copies are cheap.
class CMatrix {
public:
    explicit CMatrix(int dim);

    static CMatrix zero(int dim) { return CMatrix(dim); }
    static CMatrix identity(int dim);
    /// Build from row-major entries; list size must be dim*dim.
    static CMatrix from_rows(int dim, std::initializer_list<Complex> entries);

    int dim() const { return dim_; }

    Complex& operator()(int r, int c) { return a_[r * dim_ + c]; }
    const Complex& operator()(int r, int c) const { return a_[r * dim_ + c]; }

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(Complex s);

    bool all_finite() const;

private:
    int dim_;
    std::array<Complex, 16> a_{};
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(Complex s, CMatrix a);
CMatrix operator*(CMatrix a, Complex s);

/// Standard matrix product; throws std::invalid_argument on dimension mismatch.
CMatrix operator*(const CMatrix& a, const CMatrix& b);

/// Conjugate transpose.
CMatrix dagger(const CMatrix& m);

/// Entrywise complex conjugate (no transpose).
CMatrix conjugate(const CMatrix& m);

/// Kronecker product of two 2x2 matrices, first factor acting on qubit 1.
CMatrix kron(const CMatrix& a, const CMatrix& b);

Complex trace(const CMatrix& m);

double max_abs(const CMatrix& m);
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// True when max |m - dagger(m)| entry is within tol.
bool is_hermitian(const CMatrix& m, double tol);

const CMatrix& pauli_x();
const CMatrix& pauli_y();
const CMatrix& pauli_z();
const CMatrix& identity2();
const CMatrix& identity4();

}  // namespace entsim
