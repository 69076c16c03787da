#include "scheme.hpp"

#include <algorithm>
#include <cmath>

namespace spintomo {

double Spinor::norm() const { return std::sqrt(std::norm(up) + std::norm(down)); }

Spinor spinor_from_bloch(const BlochVector& e, const Tolerances& tols) {
    if (e.norm() > 1.0 + tols.length)
        raise(ErrorCode::LengthExceedsOne, "direction vector is longer than 1");
    if (std::abs(e.norm() - 1.0) > tols.length)
        raise(ErrorCode::NotPure, "spinor construction needs a unit direction vector");
    if (e.z + 1.0 <= tols.pole) return Spinor{{0.0, 0.0}, {1.0, 0.0}};
    const double root = std::sqrt(e.z + 1.0);
    Spinor psi{Complex(root / std::sqrt(2.0), 0.0),
               Complex(e.x, e.y) / (root * std::sqrt(2.0))};
    const double n = psi.norm();
    psi.up /= n;
    psi.down /= n;
    return psi;
}

CMatrix projector_from_bloch(const BlochVector& e, const Tolerances& tols) {
    if (e.norm() > 1.0 + tols.length)
        raise(ErrorCode::LengthExceedsOne, "direction vector is longer than 1");
    CMatrix u(2);
    u(0, 0) = Complex(0.5 * (1.0 + e.z), 0.0);
    u(0, 1) = Complex(0.5 * e.x, -0.5 * e.y);
    u(1, 0) = Complex(0.5 * e.x, 0.5 * e.y);
    u(1, 1) = Complex(0.5 * (1.0 - e.z), 0.0);
    return u;
}

std::pair<double, double> dequantizer_eigenvalues(const BlochVector& e) {
    const double n = e.norm();
    return {0.5 * (1.0 + n), 0.5 * (1.0 - n)};
}

std::array<CMatrix, 4> build_dequantizer(const SchemeQuadruple& q, const Tolerances& tols) {
    return {projector_from_bloch(q.e[0], tols), projector_from_bloch(q.e[1], tols),
            projector_from_bloch(q.e[2], tols), projector_from_bloch(q.e[3], tols)};
}

namespace {

double det3x3(double a1, double b1, double c1, double a2, double b2, double c2, double a3,
              double b3, double c3) {
    return a1 * (b2 * c3 - b3 * c2) - b1 * (a2 * c3 - a3 * c2) + c1 * (a2 * b3 - a3 * b2);
}

struct BorderedMinors {
    double mbg, mag, mab;
};

/// Minors over the cyclic rows (e_{k+1}, e_{k+2}, e_{k+3}) with a leading
/// column of ones; the b/g, a/g and a/b column pairs in turn.
BorderedMinors bordered_minors(const std::array<BlochVector, 4>& e, int k) {
    const BlochVector& r1 = e[(k + 1) % 4];
    const BlochVector& r2 = e[(k + 2) % 4];
    const BlochVector& r3 = e[(k + 3) % 4];
    return {det3x3(1, r1.y, r1.z, 1, r2.y, r2.z, 1, r3.y, r3.z),
            det3x3(1, r1.x, r1.z, 1, r2.x, r2.z, 1, r3.x, r3.z),
            det3x3(1, r1.x, r1.y, 1, r2.x, r2.y, 1, r3.x, r3.y)};
}

std::array<double, 4> checked_deltas(const SchemeQuadruple& q, const Tolerances& tols) {
    const auto deltas = coplanarity_determinants(q.e);
    for (double d : deltas)
        if (std::abs(d) < tols.coplanar)
            raise(ErrorCode::CoplanarQuadruple, "coplanarity determinant below tolerance; "
                                                "the scheme is not invertible");
    return deltas;
}

} // namespace

std::array<CMatrix, 4> build_quantizer_cramer(const SchemeQuadruple& q, const Tolerances& tols) {
    const auto deltas = checked_deltas(q, tols);
    std::array<CMatrix, 4> d{CMatrix(2), CMatrix(2), CMatrix(2), CMatrix(2)};
    for (int k = 0; k < 4; ++k) {
        const BorderedMinors m = bordered_minors(q.e, k);
        const double denom = 4.0 * deltas[k];
        d[k](0, 0) = Complex(0.25 - m.mab / denom, 0.0);
        d[k](1, 1) = Complex(0.25 + m.mab / denom, 0.0);
        d[k](0, 1) = Complex(-m.mbg / denom, -m.mag / denom);
        d[k](1, 0) = std::conj(d[k](0, 1));
    }
    return d;
}

TransferMatrices transfer_matrices(const std::array<CMatrix, 4>& U) {
    TransferMatrices tm;
    for (int j = 0; j < 4; ++j) {
        tm.R(j, 0) = U[j](0, 0);
        tm.R(j, 1) = U[j](1, 0);
        tm.R(j, 2) = U[j](0, 1);
        tm.R(j, 3) = U[j](1, 1);
    }
    try {
        tm.J = inverse(tm.R);
    } catch (const Error&) {
        raise(ErrorCode::SingularTransferMatrix, "transfer matrix R is singular; "
                                                 "the quadruple carries a coplanar triple");
    }
    tm.det_R = determinant(tm.R);
    return tm;
}

std::array<CMatrix, 4> build_quantizer_inverse(const SchemeQuadruple& q, const Tolerances& tols) {
    checked_deltas(q, tols);
    const TransferMatrices tm = transfer_matrices(build_dequantizer(q, tols));
    std::array<CMatrix, 4> d{CMatrix(2), CMatrix(2), CMatrix(2), CMatrix(2)};
    for (int k = 0; k < 4; ++k) {
        d[k](0, 0) = tm.J(0, k);
        d[k](0, 1) = tm.J(1, k);
        d[k](1, 0) = tm.J(2, k);
        d[k](1, 1) = tm.J(3, k);
    }
    return d;
}

std::pair<double, double> quantizer_eigenvalues(const SchemeQuadruple& q, int k,
                                                const Tolerances& tols) {
    if (k < 0 || k > 3) raise(ErrorCode::InvalidArgument, "component index out of range");
    const auto deltas = checked_deltas(q, tols);
    const BorderedMinors m = bordered_minors(q.e, k);
    const double s =
        std::sqrt(m.mab * m.mab + m.mbg * m.mbg + m.mag * m.mag) / (4.0 * std::abs(deltas[k]));
    return {0.25 + s, 0.25 - s};
}

Spin12Scheme build_scheme(const SchemeQuadruple& q, const Tolerances& tols,
                          QuantizerMethod method, const std::string& label) {
    Spin12Scheme s;
    s.quadruple = q;
    s.tols = tols;
    s.label = label;
    s.U = build_dequantizer(q, tols);
    s.D = method == QuantizerMethod::Cramer ? build_quantizer_cramer(q, tols)
                                            : build_quantizer_inverse(q, tols);
    double orth = 0.0;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
            orth = std::max(orth, std::abs(trace_product(s.U[j], s.D[k]) -
                                           Complex(j == k ? 1.0 : 0.0, 0.0)));
    if (orth > tols.orthogonality)
        raise(ErrorCode::ValidationFailure, "built scheme violates orthogonality; "
                                            "quadruple too close to coplanar");
    return s;
}

SchemeDiagnostics scheme_diagnostics(const Spin12Scheme& s) {
    const Tolerances& tols = s.tols;
    SchemeDiagnostics d;
    d.deltas = coplanarity_determinants(s.quadruple.e);
    const BlochVector closure =
        s.quadruple.e[0] + s.quadruple.e[1] + s.quadruple.e[2] + s.quadruple.e[3];
    const double closure_residual = closure.norm();

    for (int k = 0; k < 4; ++k) {
        d.lengths[k] = s.quadruple.e[k].norm();
        d.hermiticity_defect = std::max(d.hermiticity_defect, s.U[k].hermiticity_defect());
        d.hermiticity_defect = std::max(d.hermiticity_defect, s.D[k].hermiticity_defect());
        d.u_eigenvalues[k] = dequantizer_eigenvalues(s.quadruple.e[k]);
        d.d_eigenvalues[k] = quantizer_eigenvalues(s.quadruple, k, tols);
        d.det_U[k] = determinant(s.U[k]).real();
        d.det_D[k] = determinant(s.D[k]).real();

        const auto ue = eig2_hermitian(s.U[k], tols.hermitian);
        const auto de = eig2_hermitian(s.D[k], tols.hermitian);
        d.eig_closed_form_residual = std::max(
            {d.eig_closed_form_residual, std::abs(ue.first - d.u_eigenvalues[k].first),
             std::abs(ue.second - d.u_eigenvalues[k].second),
             std::abs(de.first - d.d_eigenvalues[k].first),
             std::abs(de.second - d.d_eigenvalues[k].second)});
    }

    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            d.trace_UU[j][k] = trace_product(s.U[j], s.U[k]).real();
            d.trace_DD[j][k] = trace_product(s.D[j], s.D[k]).real();
            d.orthogonality_residual =
                std::max(d.orthogonality_residual,
                         std::abs(trace_product(s.U[j], s.D[k]) - Complex(j == k ? 1.0 : 0.0, 0.0)));
        }

    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int ap = 0; ap < 2; ++ap)
                for (int bp = 0; bp < 2; ++bp) {
                    Complex sum(0.0, 0.0);
                    for (int j = 0; j < 4; ++j) sum += s.U[j](a, b) * s.D[j](bp, ap);
                    const double target = (a == ap && b == bp) ? 1.0 : 0.0;
                    d.completeness_residual =
                        std::max(d.completeness_residual, std::abs(sum - Complex(target, 0.0)));
                }

    const CMatrix sum_U = s.U[0] + s.U[1] + s.U[2] + s.U[3];
    const CMatrix sum_D = s.D[0] + s.D[1] + s.D[2] + s.D[3];
    d.sum_U_residual = max_abs_diff(sum_U, Complex(2.0, 0.0) * CMatrix::identity(2));
    d.sum_D_residual = max_abs_diff(sum_D, CMatrix::identity(2));
    for (int k = 0; k < 4; ++k) {
        d.trace_U_residual = std::max(d.trace_U_residual, std::abs(s.U[k].trace() - Complex(1.0, 0.0)));
        d.trace_D_residual = std::max(d.trace_D_residual, std::abs(s.D[k].trace() - Complex(0.5, 0.0)));
        d.trace_square_residual =
            std::max(d.trace_square_residual,
                     std::abs(d.trace_UU[k][k] - 0.5 * (1.0 + d.lengths[k] * d.lengths[k])));
    }

    // closure e_a + e_b = -(e_c + e_d) forces
    // 2 T_ab + T_aa + T_bb = 2 T_cd + T_cc + T_dd for every pair split
    const auto three_term = [](const std::array<std::array<double, 4>, 4>& t) {
        double r = 0.0;
        const int splits[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
        for (const auto& sp : splits) {
            const double lhs = 2.0 * t[sp[0]][sp[1]] + t[sp[0]][sp[0]] + t[sp[1]][sp[1]];
            const double rhs = 2.0 * t[sp[2]][sp[3]] + t[sp[2]][sp[2]] + t[sp[3]][sp[3]];
            r = std::max(r, std::abs(lhs - rhs));
        }
        return r;
    };
    const auto pairwise = [](const std::array<std::array<double, 4>, 4>& t) {
        return std::max({std::abs(t[0][1] - t[2][3]), std::abs(t[0][2] - t[1][3]),
                         std::abs(t[0][3] - t[1][2])});
    };
    d.three_term_residual_U = three_term(d.trace_UU);
    d.three_term_residual_D = three_term(d.trace_DD);
    d.pairwise_residual_U = pairwise(d.trace_UU);
    d.pairwise_residual_D = pairwise(d.trace_DD);

    const auto [lmin, lmax] = std::minmax_element(d.lengths.begin(), d.lengths.end());
    d.equal_lengths = (*lmax - *lmin) <= 1e-10;

    const auto d_cramer = build_quantizer_cramer(s.quadruple, tols);
    const auto d_inverse = build_quantizer_inverse(s.quadruple, tols);
    for (int k = 0; k < 4; ++k)
        d.cramer_vs_inverse = std::max(d.cramer_vs_inverse, max_abs_diff(d_cramer[k], d_inverse[k]));

    const TransferMatrices tm = transfer_matrices(s.U);
    d.det_R = tm.det_R;
    d.det_R_residual = std::abs(tm.det_R - Complex(0.0, d.deltas[0]));

    d.max_det_D = *std::max_element(d.det_D.begin(), d.det_D.end());
    d.quantizer_indefinite = d.max_det_D < 0.0;
    for (int k = 0; k < 4; ++k)
        if (!(d.d_eigenvalues[k].first > 0.0 && d.d_eigenvalues[k].second < 0.0))
            d.quantizer_indefinite = false;

    // identities that lean on exact closure get slack proportional to the
    // actual closure defect
    const double closure_slack = 1e-12 + 10.0 * closure_residual;
    d.pass = d.hermiticity_defect <= tols.hermitian &&
             d.orthogonality_residual <= tols.orthogonality &&
             d.completeness_residual <= tols.orthogonality &&
             d.sum_U_residual <= 1e-10 && d.sum_D_residual <= 1e-10 &&
             d.trace_U_residual <= 1e-12 && d.trace_D_residual <= 1e-12 &&
             d.trace_square_residual <= 1e-12 &&
             d.three_term_residual_U <= closure_slack &&
             d.three_term_residual_D <= closure_slack &&
             (!d.equal_lengths || (d.pairwise_residual_U <= closure_slack &&
                                   d.pairwise_residual_D <= closure_slack)) &&
             d.eig_closed_form_residual <= 1e-10 &&
             d.cramer_vs_inverse <= tols.orthogonality &&
             d.det_R_residual <= 1e-10 && d.quantizer_indefinite;
    return d;
}

} // namespace spintomo
