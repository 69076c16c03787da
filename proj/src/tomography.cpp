#include "tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace spintomo {

void check_density(const CMatrix& mat, const Tolerances& tols) {
    if (!mat.is_hermitian(tols.hermitian))
        raise(ErrorCode::NotHermitian, "density matrix is not Hermitian");
    if (std::abs(mat.trace() - Complex(1.0, 0.0)) > 1e-12)
        raise(ErrorCode::NonPhysicalState, "density matrix trace differs from 1");
    if (!is_psd(mat, tols.psd, tols.hermitian))
        raise(ErrorCode::NonPhysicalState, "density matrix has a negative eigenvalue");
}

DensityMatrix density_from_matrix(const CMatrix& mat, const Tolerances& tols) {
    check_density(mat, tols);
    return DensityMatrix{mat};
}

std::vector<double> apply_dequantizer(const CMatrix& a, const Spin12Scheme& s) {
    if (a.dim() != 2) raise(ErrorCode::DimensionMismatch, "expected a 2x2 matrix");
    std::vector<double> w(4);
    for (int j = 0; j < 4; ++j) {
        const Complex t = trace_product(a, s.U[j]);
        if (std::abs(t.imag()) > 1e-10)
            raise(ErrorCode::NotHermitian, "trace against a dequantizer component "
                                           "has a non-negligible imaginary part");
        w[j] = t.real();
    }
    return w;
}

Tomogram forward(const DensityMatrix& rho, const Spin12Scheme& s) {
    if (rho.dim() != 2)
        raise(ErrorCode::DimensionMismatch, "single-qubit map needs a 2x2 density matrix");
    check_density(rho.mat, s.tols);
    return Tomogram{apply_dequantizer(rho.mat, s), s.label};
}

DensityMatrix inverse(const std::vector<double>& w, const Spin12Scheme& s) {
    if (w.size() != 4)
        raise(ErrorCode::DimensionMismatch, "tomogram must have exactly 4 components");
    CMatrix m(2);
    for (int j = 0; j < 4; ++j) m = m + w[j] * s.D[j];
    return DensityMatrix{m};
}

DensityMatrix inverse(const Tomogram& t, const Spin12Scheme& s) { return inverse(t.w, s); }

PhysicalityReport is_physical(const std::vector<double>& w, const Spin12Scheme& s, double tol) {
    if (w.size() != 4)
        raise(ErrorCode::DimensionMismatch, "tomogram must have exactly 4 components");
    PhysicalityReport r;
    Complex off(0.0, 0.0);
    for (int j = 0; j < 4; ++j) {
        r.diag_upper += s.D[j](0, 0).real() * w[j];
        r.diag_lower += s.D[j](1, 1).real() * w[j];
        off += s.D[j](0, 1) * w[j];
        r.normalization += s.D[j].trace().real() * w[j];
    }
    r.det_value = r.diag_upper * r.diag_lower - std::norm(off);
    r.diag_ok = r.diag_upper >= -tol && r.diag_lower >= -tol;
    r.one_zero_ok = !(std::abs(r.diag_upper) <= tol && std::abs(r.diag_lower) <= tol);
    r.det_ok = r.det_value >= -tol;
    r.norm_ok = std::abs(r.normalization - 1.0) <= tol;
    r.pass = r.diag_ok && r.one_zero_ok && r.det_ok && r.norm_ok;
    return r;
}

PhysicalityReport is_physical(const Tomogram& t, const Spin12Scheme& s, double tol) {
    return is_physical(t.w, s, tol);
}

double purity(const DensityMatrix& rho) { return trace_product(rho.mat, rho.mat).real(); }

CountRecord simulate_counts(const DensityMatrix& rho, const Spin12Scheme& s, long long shots,
                            std::uint64_t seed) {
    if (shots < 1) raise(ErrorCode::InvalidArgument, "shots must be at least 1");
    const Tomogram t = forward(rho, s);
    CountRecord rec;
    rec.shots = shots;
    rec.seed = seed;
    rec.scheme_label = s.label;
    rec.successes.resize(4);
    std::mt19937_64 rng(seed);
    for (int j = 0; j < 4; ++j) {
        if (t.w[j] < -1e-9 || t.w[j] > 1.0 + 1e-9) {
            std::ostringstream msg;
            msg << "component probability " << t.w[j] << " outside [0,1]";
            raise(ErrorCode::NonPhysicalState, msg.str());
        }
        const double p = std::clamp(t.w[j], 0.0, 1.0);
        std::binomial_distribution<long long> binom(shots, p);
        rec.successes[j] = binom(rng);
    }
    return rec;
}

Estimate estimate_state(const CountRecord& c, const Spin12Scheme& s,
                        const std::optional<DensityMatrix>& truth) {
    if (c.shots < 1) raise(ErrorCode::InvalidArgument, "shots must be at least 1");
    if (c.successes.size() != 4)
        raise(ErrorCode::DimensionMismatch, "count record must have exactly 4 components");
    Estimate est;
    est.w_hat.resize(4);
    double total = 0.0;
    for (int j = 0; j < 4; ++j) {
        est.w_hat[j] = static_cast<double>(c.successes[j]) / static_cast<double>(c.shots);
        total += est.w_hat[j];
    }
    if (total <= 0.0)
        raise(ErrorCode::InvalidArgument, "count record is all zeros; nothing to invert");
    for (double& v : est.w_hat) v *= 2.0 / total;

    est.rho = inverse(est.w_hat, s);
    const auto eigs = eig2_hermitian(est.rho.mat, 1e-9);
    est.metrics.min_eigenvalue = eigs.second;
    est.metrics.trace = est.rho.mat.trace().real();
    if (truth) {
        const DensityMatrix ref = inverse(forward(*truth, s), s);
        est.metrics.frobenius_error = frobenius_distance(est.rho.mat, ref.mat);
    } else {
        est.metrics.frobenius_error = std::numeric_limits<double>::quiet_NaN();
    }
    return est;
}

std::uint64_t derive_trial_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace spintomo
