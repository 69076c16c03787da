#pragma once

#include "tomography.hpp"

namespace spintomo {

/// Index bijections tying the composite system to its factors. Both are
/// big-endian positional codes (first factor most significant), 1-based at
/// both ends, which lines up with the Kronecker index layout so no
/// permutation appears anywhere.

/// k in 1..2^n -> n digits each in {1,2}
std::vector<int> g_map(int k, int n);
int g_inverse(const std::vector<int>& ks);

/// n digits each in {1..4} -> j in 1..4^n
int f_map(const std::vector<int>& js);
std::vector<int> f_inverse(int j, int n);

/// N spin-1/2 factor schemes composed by Kronecker products; factors may
/// differ. Kept in factored form; dense 4^N-component materialization is
/// gated by materialize_limit.
struct TensorScheme {
    std::vector<Spin12Scheme> factors;
    int materialize_limit = 5;
    Tolerances tols;
    std::string label;

    int n() const { return static_cast<int>(factors.size()); }
    int dim() const { return 1 << factors.size(); }
    int component_count() const { return 1 << (2 * factors.size()); }
};

TensorScheme build_tensor_scheme(std::vector<Spin12Scheme> factors, int materialize_limit = 5,
                                 const std::string& label = "");

enum class ComponentKind { Dequantizer, Quantizer };

/// Dense component U^(1)_{j1} x ... x U^(N)_{jN} (resp. D) with (j1..jN) =
/// the base-4 digits of j. j is 1-based. Refused above materialize_limit.
CMatrix tensor_component(const TensorScheme& ts, int j, ComponentKind kind);

/// w_j = Tr{rho 'U_j}; sums to 2^N. Components are built one at a time, so
/// this works for any N the dimension cap admits.
Tomogram forward_n(const DensityMatrix& rho, const TensorScheme& ts);

/// rho = sum_j w_j 'D_j by factored accumulation of Kronecker terms.
DensityMatrix inverse_n(const std::vector<double>& w, const TensorScheme& ts);
DensityMatrix inverse_n(const Tomogram& t, const TensorScheme& ts);

enum class VerifyMode { Exhaustive, Sampled };

struct TensorIdentityReport {
    int n = 1;
    bool exhaustive = false;
    long long orthogonality_pairs = 0;
    long long completeness_tuples = 0;
    double orthogonality_residual = 0.0; // Tr{U_j D_j'} vs delta_jj'
    double completeness_residual = 0.0;  // sum_j U_j(kl) D_j(l'k') vs delta delta
    double trace_U_residual = 0.0;       // vs 1
    double trace_D_residual = 0.0;       // vs 1/2^N
    double sum_U_residual = 0.0;         // vs 2^N E
    double sum_D_residual = 0.0;         // vs E
    bool pass = false;
};

/// Exhaustive mode checks every orthogonality pair and every spin-index
/// tuple (N <= 2 only); sampled mode draws seeded random pairs and tuples.
TensorIdentityReport verify_tensor_identities(const TensorScheme& ts, VerifyMode mode,
                                              std::uint64_t seed = 1, int samples = 1000);

} // namespace spintomo
