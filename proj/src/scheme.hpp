#pragma once

#include <array>
#include <string>
#include <utility>

#include "cmatrix.hpp"
#include "geometry.hpp"

namespace spintomo {

/// Two-component state vector; |up|^2 + |down|^2 = 1.
struct Spinor {
    Complex up{0.0, 0.0};
    Complex down{0.0, 0.0};
    double norm() const;
};

/// psi = (sqrt(g+1), (a+ib)/sqrt(g+1)) / sqrt(2) for a unit vector (a,b,g);
/// the south pole g = -1 takes the limit (0,1). Unit vectors only.
Spinor spinor_from_bloch(const BlochVector& e, const Tolerances& tols = {});

/// U = 1/2 [[1+g, a-ib], [a+ib, 1-g]]. Rank-1 projector for |e| = 1 (equal
/// to the spinor outer product), a mixed state for |e| < 1. Trace 1 always.
CMatrix projector_from_bloch(const BlochVector& e, const Tolerances& tols = {});

/// (1 + |e|)/2 and (1 - |e|)/2, descending.
std::pair<double, double> dequantizer_eigenvalues(const BlochVector& e);

/// U_k = projector_from_bloch(e_k); closure makes the four sum to 2E.
std::array<CMatrix, 4> build_dequantizer(const SchemeQuadruple& q, const Tolerances& tols = {});

/// Closed-form quantizer. With cyclic rows (r1,r2,r3) = (e_{k+1},e_{k+2},e_{k+3})
/// and the bordered minors
///   Mbg = det[[1,b,g]...],  Mag = det[[1,a,g]...],  Mab = det[[1,a,b]...],
/// the component is
///   D_k = [[1/4 - Mab/(4 Dk),  -(Mbg + i Mag)/(4 Dk)],
///          [conj,               1/4 + Mab/(4 Dk)]].
/// Hermitian with trace 1/2 by construction.
std::array<CMatrix, 4> build_quantizer_cramer(const SchemeQuadruple& q,
                                              const Tolerances& tols = {});

/// Row j of R flattens U_j in column order (11),(21),(12),(22); J is its
/// numeric inverse, so row m of J carries entry (11),(12),(21),(22) of every
/// D_k (one per column). det R = i*Delta_1.
struct TransferMatrices {
    CMatrix R{4};
    CMatrix J{4};
    Complex det_R{0.0, 0.0};
};

TransferMatrices transfer_matrices(const std::array<CMatrix, 4>& U);

/// Quantizer via numeric inversion of R; the independent cross-check of the
/// Cramer route.
std::array<CMatrix, 4> build_quantizer_inverse(const SchemeQuadruple& q,
                                               const Tolerances& tols = {});

/// d_{k(1,2)} = 1/4 +- sqrt(Mab^2 + Mbg^2 + Mag^2) / (4 |Delta_k|), descending.
/// One of each sign for every valid quadruple. k is 0-based.
std::pair<double, double> quantizer_eigenvalues(const SchemeQuadruple& q, int k,
                                                const Tolerances& tols = {});

enum class QuantizerMethod { Cramer, Inverse };

struct Spin12Scheme {
    SchemeQuadruple quadruple;
    std::array<CMatrix, 4> U{CMatrix(2), CMatrix(2), CMatrix(2), CMatrix(2)};
    std::array<CMatrix, 4> D{CMatrix(2), CMatrix(2), CMatrix(2), CMatrix(2)};
    Tolerances tols;
    std::string label;
};

Spin12Scheme build_scheme(const SchemeQuadruple& q, const Tolerances& tols = {},
                          QuantizerMethod method = QuantizerMethod::Cramer,
                          const std::string& label = "");

/// Full identity report. Residuals are reported even when they pass; `pass`
/// aggregates the gates used by the CLI validator.
struct SchemeDiagnostics {
    std::array<double, 4> deltas{};
    std::array<double, 4> lengths{};
    std::array<std::pair<double, double>, 4> u_eigenvalues{};
    std::array<std::pair<double, double>, 4> d_eigenvalues{};
    std::array<double, 4> det_U{};
    std::array<double, 4> det_D{};
    std::array<std::array<double, 4>, 4> trace_UU{};
    std::array<std::array<double, 4>, 4> trace_DD{};

    double hermiticity_defect = 0.0;
    double orthogonality_residual = 0.0; // max |Tr(U_j D_k) - delta_jk|
    double completeness_residual = 0.0;  // max |sum_j U_j(kl) D_j(l'k') - delta delta|
    double sum_U_residual = 0.0;         // vs 2E
    double sum_D_residual = 0.0;         // vs E
    double trace_U_residual = 0.0;       // vs 1
    double trace_D_residual = 0.0;       // vs 1/2
    double trace_square_residual = 0.0;  // Tr U_k^2 vs (1+|e_k|^2)/2
    double three_term_residual_U = 0.0;  // 2T12+T11+T22 = 2T34+T33+T44 and partners
    double three_term_residual_D = 0.0;
    double pairwise_residual_U = 0.0;    // T12=T34 etc., meaningful for equal lengths
    double pairwise_residual_D = 0.0;
    double eig_closed_form_residual = 0.0; // closed-form vs eig2 on U and D
    double cramer_vs_inverse = 0.0;
    Complex det_R{0.0, 0.0};
    double det_R_residual = 0.0; // |det R - i*Delta_1|
    double max_det_D = 0.0;      // negative for every valid scheme
    bool equal_lengths = false;
    bool quantizer_indefinite = false;
    bool pass = false;
};

SchemeDiagnostics scheme_diagnostics(const Spin12Scheme& s);

} // namespace spintomo
