#include "cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spintomo {

namespace {

void require_same_dim(const CMatrix& a, const CMatrix& b, const char* op) {
    if (a.dim() != b.dim()) {
        raise(ErrorCode::DimensionMismatch,
              std::string(op) + ": dimensions " + std::to_string(a.dim()) + " and " +
                  std::to_string(b.dim()) + " differ");
    }
}

bool finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

} // namespace

CMatrix::CMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_) {
        raise(ErrorCode::DimensionMismatch,
              "CMatrix: " + std::to_string(entries_.size()) + " entries for dim " +
                  std::to_string(dim_));
    }
    for (const Complex& z : entries_) {
        if (!finite(z)) {
            raise(ErrorCode::InvalidArgument, "CMatrix: non-finite entry");
        }
    }
}

CMatrix CMatrix::identity(std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = Complex(1.0, 0.0);
    }
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            m(c, r) = std::conj((*this)(r, c));
        }
    }
    return m;
}

Complex CMatrix::trace() const {
    Complex t(0.0, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double CMatrix::hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = r; c < dim_; ++c) {
            worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return worst;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : entries_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    require_same_dim(a, b, "add");
    CMatrix m(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            m(i, j) = a(i, j) + b(i, j);
        }
    }
    return m;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    require_same_dim(a, b, "subtract");
    CMatrix m(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            m(i, j) = a(i, j) - b(i, j);
        }
    }
    return m;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    require_same_dim(a, b, "multiply");
    const std::size_t n = a.dim();
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0, 0.0)) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) += aik * b(k, j);
            }
        }
    }
    return m;
}

CMatrix operator*(Complex s, const CMatrix& a) {
    CMatrix m(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            m(i, j) = s * a(i, j);
        }
    }
    return m;
}

CMatrix operator*(double s, const CMatrix& a) {
    return Complex(s, 0.0) * a;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    require_same_dim(a, b, "max_abs_diff");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
        }
    }
    return worst;
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) {
    return (a - b).frobenius_norm();
}

Complex trace_product(const CMatrix& a, const CMatrix& b) {
    require_same_dim(a, b, "trace_product");
    Complex t(0.0, 0.0);
    for (std::size_t k = 0; k < a.dim(); ++k) {
        for (std::size_t l = 0; l < a.dim(); ++l) {
            t += a(k, l) * b(l, k);
        }
    }
    return t;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const std::size_t ad = a.dim();
    const std::size_t bd = b.dim();
    CMatrix m(ad * bd);
    for (std::size_t i = 0; i < ad; ++i) {
        for (std::size_t j = 0; j < ad; ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < bd; ++k) {
                for (std::size_t l = 0; l < bd; ++l) {
                    m(i * bd + k, j * bd + l) = aij * b(k, l);
                }
            }
        }
    }
    return m;
}

std::pair<double, double> eig2_hermitian(const CMatrix& a, double herm_tol) {
    if (a.dim() != 2) {
        raise(ErrorCode::DimensionMismatch,
              "eig2_hermitian: dim " + std::to_string(a.dim()) + ", expected 2");
    }
    if (!a.is_hermitian(herm_tol)) {
        raise(ErrorCode::NotHermitian, "eig2_hermitian: matrix is not Hermitian");
    }
    const double mean = 0.5 * (a(0, 0).real() + a(1, 1).real());
    const double radius = std::hypot(0.5 * (a(0, 0).real() - a(1, 1).real()), std::abs(a(0, 1)));
    return {mean + radius, mean - radius};
}

std::vector<double> eig_hermitian(const CMatrix& a, double herm_tol) {
    constexpr std::size_t kMaxDim = 64;
    constexpr int kMaxSweeps = 60;

    const std::size_t n = a.dim();
    if (n == 0 || n > kMaxDim) {
        raise(ErrorCode::InvalidArgument,
              "eig_hermitian: dim " + std::to_string(n) + " outside 1.." +
                  std::to_string(kMaxDim));
    }
    if (!a.is_hermitian(herm_tol)) {
        raise(ErrorCode::NotHermitian, "eig_hermitian: matrix is not Hermitian");
    }

    // Work on the exactly Hermitian part so rotations preserve symmetry.
    CMatrix w(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            w(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
        }
    }

    const double scale = std::max(w.frobenius_norm(), 1e-300);
    const double stop = 1e-15 * scale;

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                s += 2.0 * std::norm(w(p, q));
            }
        }
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_norm() <= stop) {
            std::vector<double> eig(n);
            for (std::size_t i = 0; i < n; ++i) {
                eig[i] = w(i, i).real();
            }
            std::sort(eig.begin(), eig.end(), std::greater<double>());
            return eig;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = w(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) {
                    continue;
                }
                const Complex phase = apq / r;
                const double app = w(p, p).real();
                const double aqq = w(q, q).real();
                // tan of the rotation angle: small-magnitude root of
                // t^2 - 2*theta*t - 1 = 0 with theta = (app - aqq) / (2r)
                const double theta = (app - aqq) / (2.0 * r);
                const double t = (theta >= 0.0)
                                     ? -1.0 / (theta + std::sqrt(1.0 + theta * theta))
                                     : 1.0 / (-theta + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex spq = s * phase;        // U(p,q) = s*e^{i phi}
                // columns: B = W * U
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex wip = w(i, p);
                    const Complex wiq = w(i, q);
                    w(i, p) = c * wip - std::conj(spq) * wiq;
                    w(i, q) = spq * wip + c * wiq;
                }
                // rows: W = U' * B
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex wpj = w(p, j);
                    const Complex wqj = w(q, j);
                    w(p, j) = c * wpj - spq * wqj;
                    w(q, j) = std::conj(spq) * wpj + c * wqj;
                }
                w(p, q) = Complex(0.0, 0.0);
                w(q, p) = Complex(0.0, 0.0);
                w(p, p) = Complex(w(p, p).real(), 0.0);
                w(q, q) = Complex(w(q, q).real(), 0.0);
            }
        }
    }
    raise(ErrorCode::EigNoConvergence,
          "eig_hermitian: no convergence after " + std::to_string(kMaxSweeps) + " sweeps");
}

bool is_psd(const CMatrix& a, double tol, double herm_tol) {
    const std::vector<double> eig = eig_hermitian(a, herm_tol);
    return eig.back() >= -tol;
}

CMatrix inverse(const CMatrix& a) {
    const std::size_t n = a.dim();
    CMatrix w = a;
    CMatrix inv = CMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(w(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(w(r, col)) > best) {
                best = std::abs(w(r, col));
                pivot = r;
            }
        }
        if (best <= 1e-300) {
            raise(ErrorCode::SingularMatrix, "inverse: singular matrix");
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w(pivot, j), w(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        }
        const Complex d = w(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            w(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) {
                continue;
            }
            const Complex f = w(r, col);
            if (f == Complex(0.0, 0.0)) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                w(r, j) -= f * w(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

Complex determinant(const CMatrix& a) {
    const std::size_t n = a.dim();
    CMatrix w = a;
    Complex det(1.0, 0.0);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(w(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(w(r, col)) > best) {
                best = std::abs(w(r, col));
                pivot = r;
            }
        }
        if (best == 0.0) {
            return Complex(0.0, 0.0);
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w(pivot, j), w(col, j));
            }
            det = -det;
        }
        det *= w(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex f = w(r, col) / w(col, col);
            for (std::size_t j = col; j < n; ++j) {
                w(r, j) -= f * w(col, j);
            }
        }
    }
    return det;
}

} // namespace spintomo
