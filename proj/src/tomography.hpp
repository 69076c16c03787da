#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scheme.hpp"

namespace spintomo {

/// Candidate density matrix. Construction does not enforce physicality:
/// inverse() legitimately produces indefinite candidates from non-physical
/// tomograms. Entry points that require a physical state call check_density.
struct DensityMatrix {
    CMatrix mat{2};
    int dim() const { return mat.dim(); }
};

/// Throws NotHermitian / NonPhysicalState unless mat is Hermitian, unit
/// trace (1e-12) and PSD within psd tolerance.
void check_density(const CMatrix& mat, const Tolerances& tols = {});

DensityMatrix density_from_matrix(const CMatrix& mat, const Tolerances& tols = {});

/// Measurement probability vector; one entry per scheme component.
struct Tomogram {
    std::vector<double> w;
    std::string scheme_label;
};

/// w_j = Tr{rho U_j}. Requires a physical state; the imaginary residue of
/// each trace is asserted small and dropped. Components land in [0,1] and
/// sum to 2.
Tomogram forward(const DensityMatrix& rho, const Spin12Scheme& s);

/// The same contraction without any physicality gate, for arbitrary
/// Hermitian input. forward() is this plus the checks.
std::vector<double> apply_dequantizer(const CMatrix& a, const Spin12Scheme& s);

/// rho = sum_j w_j D_j. Hermitian by construction, trace = (1/2) sum w.
/// Physicality is not enforced here; use is_physical.
DensityMatrix inverse(const Tomogram& t, const Spin12Scheme& s);
DensityMatrix inverse(const std::vector<double>& w, const Spin12Scheme& s);

/// The three §-style reconstruction conditions evaluated directly on w:
/// both diagonal sums nonnegative (at most one of them zero), the 2x2
/// determinant condition, and the trace normalization sum_k Tr{D_k} w_k = 1.
struct PhysicalityReport {
    double diag_upper = 0.0;   // sum_j D_j(11) w_j
    double diag_lower = 0.0;   // sum_j D_j(22) w_j
    double det_value = 0.0;    // product of diagonals minus |off-diagonal|^2
    double normalization = 0.0;
    bool diag_ok = false;
    bool one_zero_ok = false;
    bool det_ok = false;
    bool norm_ok = false;
    bool pass = false;
};

PhysicalityReport is_physical(const Tomogram& t, const Spin12Scheme& s, double tol = 1e-10);
PhysicalityReport is_physical(const std::vector<double>& w, const Spin12Scheme& s,
                              double tol = 1e-10);

/// Tr{rho^2}; 1/2 at the maximally mixed qubit state, 1 for pure states.
double purity(const DensityMatrix& rho);

/// One binomial sample per component: successes_j ~ B(shots, w_j).
struct CountRecord {
    long long shots = 0;
    std::vector<long long> successes;
    std::uint64_t seed = 0;
    std::string scheme_label;
};

CountRecord simulate_counts(const DensityMatrix& rho, const Spin12Scheme& s, long long shots,
                            std::uint64_t seed);

struct EstimateMetrics {
    double frobenius_error = 0.0; // vs reconstruction from exact w; NaN without truth
    double min_eigenvalue = 0.0;
    double trace = 0.0;
};

/// Linear inversion of empirical frequencies. The frequencies are rescaled
/// multiplicatively to sum to 2 before inversion, which pins the trace of
/// the estimate to 1. No PSD repair: indefinite estimates are reported.
struct Estimate {
    DensityMatrix rho;
    std::vector<double> w_hat;
    EstimateMetrics metrics;
};

Estimate estimate_state(const CountRecord& c, const Spin12Scheme& s,
                        const std::optional<DensityMatrix>& truth = std::nullopt);

/// Stateless per-trial seed stream (splitmix64 at position index+1).
std::uint64_t derive_trial_seed(std::uint64_t seed, std::uint64_t index);

} // namespace spintomo
