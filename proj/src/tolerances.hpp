#pragma once

namespace spintomo {

// Numerical thresholds shared across the library. The coplanarity bound is
// deliberately looser than the raw arithmetic tolerances: it guards a matrix
// inversion whose entries scale like 1/Delta.
struct Tolerances {
    double hermitian = 1e-10;     // element-wise |A - A'| bound
    double closure = 1e-10;       // |e1 + e2 + e3 + e4|
    double coplanar = 1e-8;       // min_k |Delta_k|
    double length = 1e-12;        // slack on Bloch-vector lengths
    double orthogonality = 1e-10; // Tr{U_j D_k} - delta_jk and completeness sums
    double psd = 1e-10;           // eigenvalue floor for density matrices
    double pole = 1e-12;          // south-pole cutoff in the spinor formula
};

} // namespace spintomo
