#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace spintomo {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major. Values are immutable in spirit:
/// every operation below returns a fresh matrix, so instances can be shared
/// freely across threads once built.
class CMatrix {
public:
    CMatrix() = default;

    explicit CMatrix(std::size_t dim)
        : dim_(dim), entries_(dim * dim, Complex(0.0, 0.0)) {}

    // Validates size and rejects non-finite entries.
    CMatrix(std::size_t dim, std::vector<Complex> entries);

    static CMatrix identity(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }

    Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }

    const std::vector<Complex>& entries() const noexcept { return entries_; }

    CMatrix adjoint() const;
    Complex trace() const;

    // max element-wise |A - A'|; zero for exactly Hermitian matrices
    double hermiticity_defect() const;
    bool is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

    double frobenius_norm() const;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Complex s, const CMatrix& a);
CMatrix operator*(double s, const CMatrix& a);

double max_abs_diff(const CMatrix& a, const CMatrix& b);
double frobenius_distance(const CMatrix& a, const CMatrix& b);

/// Tr{AB} = sum_{k,l} A_kl B_lk. Throws on dimension mismatch.
Complex trace_product(const CMatrix& a, const CMatrix& b);

/// Kronecker product, (A (x) B)_{(i*Bd+k),(j*Bd+l)} = A_ij * B_kl.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Eigenvalues of a 2x2 Hermitian matrix, descending:
/// lambda = Tr/2 +- sqrt((Tr/2)^2 - det), evaluated in the stable
/// mean +- hypot((a11-a22)/2, |a12|) form.
std::pair<double, double> eig2_hermitian(const CMatrix& a, double herm_tol = 1e-10);

/// Full Hermitian spectrum, descending, via cyclic Jacobi rotations.
/// Supports dim <= 64; throws NotHermitian / EigNoConvergence.
std::vector<double> eig_hermitian(const CMatrix& a, double herm_tol = 1e-10);

/// True iff the smallest eigenvalue is >= -tol.
bool is_psd(const CMatrix& a, double tol, double herm_tol = 1e-10);

/// Gauss-Jordan inverse with partial pivoting. Throws SingularMatrix.
CMatrix inverse(const CMatrix& a);

/// Determinant via LU with partial pivoting.
Complex determinant(const CMatrix& a);

} // namespace spintomo
