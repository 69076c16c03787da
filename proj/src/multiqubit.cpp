#include "multiqubit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace spintomo {

std::vector<int> g_map(int k, int n) {
    if (n < 1 || n > 15) raise(ErrorCode::InvalidArgument, "factor count out of range");
    if (k < 1 || k > (1 << n)) raise(ErrorCode::InvalidArgument, "composite index out of range");
    std::vector<int> ks(n);
    const int v = k - 1;
    for (int i = 0; i < n; ++i) ks[i] = ((v >> (n - 1 - i)) & 1) + 1;
    return ks;
}

int g_inverse(const std::vector<int>& ks) {
    const int n = static_cast<int>(ks.size());
    if (n < 1 || n > 15) raise(ErrorCode::InvalidArgument, "factor count out of range");
    int v = 0;
    for (int d : ks) {
        if (d < 1 || d > 2) raise(ErrorCode::InvalidArgument, "factor index out of range");
        v = (v << 1) | (d - 1);
    }
    return v + 1;
}

int f_map(const std::vector<int>& js) {
    const int n = static_cast<int>(js.size());
    if (n < 1 || n > 15) raise(ErrorCode::InvalidArgument, "factor count out of range");
    int v = 0;
    for (int d : js) {
        if (d < 1 || d > 4) raise(ErrorCode::InvalidArgument, "component index out of range");
        v = (v << 2) | (d - 1);
    }
    return v + 1;
}

std::vector<int> f_inverse(int j, int n) {
    if (n < 1 || n > 15) raise(ErrorCode::InvalidArgument, "factor count out of range");
    if (j < 1 || j > (1 << (2 * n)))
        raise(ErrorCode::InvalidArgument, "composite component index out of range");
    std::vector<int> js(n);
    const int v = j - 1;
    for (int i = 0; i < n; ++i) js[i] = ((v >> (2 * (n - 1 - i))) & 3) + 1;
    return js;
}

TensorScheme build_tensor_scheme(std::vector<Spin12Scheme> factors, int materialize_limit,
                                 const std::string& label) {
    if (factors.empty()) raise(ErrorCode::InvalidArgument, "need at least one factor scheme");
    if (factors.size() > 6)
        raise(ErrorCode::InvalidArgument, "more than 6 factors exceeds the 64-dim cap");
    if (materialize_limit < 1)
        raise(ErrorCode::InvalidArgument, "materialize limit must be positive");
    TensorScheme ts;
    ts.tols = factors.front().tols;
    ts.factors = std::move(factors);
    ts.materialize_limit = materialize_limit;
    ts.label = label;
    return ts;
}

namespace {

CMatrix component_nogate(const TensorScheme& ts, int j, ComponentKind kind) {
    const std::vector<int> js = f_inverse(j, ts.n());
    const auto& pick = [&](int i) -> const CMatrix& {
        const Spin12Scheme& f = ts.factors[i];
        return kind == ComponentKind::Dequantizer ? f.U[js[i] - 1] : f.D[js[i] - 1];
    };
    CMatrix m = pick(0);
    for (int i = 1; i < ts.n(); ++i) m = kron(m, pick(i));
    return m;
}

} // namespace

CMatrix tensor_component(const TensorScheme& ts, int j, ComponentKind kind) {
    if (ts.n() > ts.materialize_limit)
        raise(ErrorCode::MaterializeLimitExceeded,
              "dense component materialization disabled beyond the configured factor count");
    return component_nogate(ts, j, kind);
}

Tomogram forward_n(const DensityMatrix& rho, const TensorScheme& ts) {
    if (rho.dim() != ts.dim())
        raise(ErrorCode::DimensionMismatch, "state dimension does not match the scheme");
    check_density(rho.mat, ts.tols);
    Tomogram t;
    t.scheme_label = ts.label;
    t.w.resize(ts.component_count());
    for (int j = 1; j <= ts.component_count(); ++j) {
        const Complex v = trace_product(rho.mat, component_nogate(ts, j, ComponentKind::Dequantizer));
        if (std::abs(v.imag()) > 1e-9)
            raise(ErrorCode::NotHermitian, "forward trace has a non-negligible imaginary part");
        t.w[j - 1] = v.real();
    }
    return t;
}

DensityMatrix inverse_n(const std::vector<double>& w, const TensorScheme& ts) {
    if (static_cast<int>(w.size()) != ts.component_count())
        raise(ErrorCode::DimensionMismatch, "tomogram length does not match the scheme");
    CMatrix m(ts.dim());
    for (int j = 1; j <= ts.component_count(); ++j)
        m = m + Complex(w[j - 1], 0.0) * component_nogate(ts, j, ComponentKind::Quantizer);
    return DensityMatrix{m};
}

DensityMatrix inverse_n(const Tomogram& t, const TensorScheme& ts) { return inverse_n(t.w, ts); }

TensorIdentityReport verify_tensor_identities(const TensorScheme& ts, VerifyMode mode,
                                              std::uint64_t seed, int samples) {
    TensorIdentityReport rep;
    rep.n = ts.n();
    rep.exhaustive = mode == VerifyMode::Exhaustive;
    if (rep.exhaustive && ts.n() > 2)
        raise(ErrorCode::InvalidArgument, "exhaustive verification is limited to 2 factors");

    const int nc = ts.component_count();
    const int dim = ts.dim();

    // cache dense components when affordable; stream otherwise
    std::vector<CMatrix> cu, cd;
    const bool cached = ts.n() <= 5;
    if (cached) {
        cu.reserve(nc);
        cd.reserve(nc);
        for (int j = 1; j <= nc; ++j) {
            cu.push_back(component_nogate(ts, j, ComponentKind::Dequantizer));
            cd.push_back(component_nogate(ts, j, ComponentKind::Quantizer));
        }
    }
    const auto get = [&](int j, ComponentKind kind) -> CMatrix {
        if (cached) return kind == ComponentKind::Dequantizer ? cu[j - 1] : cd[j - 1];
        return component_nogate(ts, j, kind);
    };

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_j(1, nc);
    std::uniform_int_distribution<int> pick_row(0, dim - 1);

    // orthogonality Tr{U_j D_j'} = delta
    const auto orth_check = [&](int j, int jp) {
        const Complex t = trace_product(get(j, ComponentKind::Dequantizer),
                                        get(jp, ComponentKind::Quantizer));
        rep.orthogonality_residual = std::max(
            rep.orthogonality_residual, std::abs(t - Complex(j == jp ? 1.0 : 0.0, 0.0)));
        ++rep.orthogonality_pairs;
    };
    if (rep.exhaustive) {
        for (int j = 1; j <= nc; ++j)
            for (int jp = 1; jp <= nc; ++jp) orth_check(j, jp);
    } else {
        for (int i = 0; i < samples; ++i) {
            const int j = pick_j(rng);
            orth_check(j, i % 2 == 0 ? j : pick_j(rng));
        }
    }

    // completeness sum_j U_j(ab) D_j(b'a') = delta_aa' delta_bb', evaluated
    // per spin-index tuple; plus the normalization sums in the same sweep
    std::vector<std::array<int, 4>> tuples;
    if (rep.exhaustive) {
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b)
                for (int ap = 0; ap < dim; ++ap)
                    for (int bp = 0; bp < dim; ++bp) tuples.push_back({a, b, ap, bp});
    } else {
        const int want = std::max(64, samples / 4);
        for (int i = 0; i < want; ++i)
            tuples.push_back({pick_row(rng), pick_row(rng), pick_row(rng), pick_row(rng)});
    }
    std::vector<Complex> acc(tuples.size(), Complex(0.0, 0.0));
    CMatrix sum_u(dim), sum_d(dim);
    for (int j = 1; j <= nc; ++j) {
        const CMatrix u = get(j, ComponentKind::Dequantizer);
        const CMatrix d = get(j, ComponentKind::Quantizer);
        sum_u = sum_u + u;
        sum_d = sum_d + d;
        rep.trace_U_residual =
            std::max(rep.trace_U_residual, std::abs(u.trace() - Complex(1.0, 0.0)));
        rep.trace_D_residual = std::max(
            rep.trace_D_residual, std::abs(d.trace() - Complex(1.0 / dim, 0.0)));
        for (std::size_t i = 0; i < tuples.size(); ++i)
            acc[i] += u(tuples[i][0], tuples[i][1]) * d(tuples[i][3], tuples[i][2]);
    }
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        const double target =
            (tuples[i][0] == tuples[i][2] && tuples[i][1] == tuples[i][3]) ? 1.0 : 0.0;
        rep.completeness_residual =
            std::max(rep.completeness_residual, std::abs(acc[i] - Complex(target, 0.0)));
    }
    rep.completeness_tuples = static_cast<long long>(tuples.size());
    rep.sum_U_residual =
        max_abs_diff(sum_u, Complex(static_cast<double>(dim), 0.0) * CMatrix::identity(dim));
    rep.sum_D_residual = max_abs_diff(sum_d, CMatrix::identity(dim));

    rep.pass = rep.orthogonality_residual <= 1e-10 && rep.completeness_residual <= 1e-10 &&
               rep.trace_U_residual <= 1e-10 && rep.trace_D_residual <= 1e-10 &&
               rep.sum_U_residual <= 1e-10 && rep.sum_D_residual <= 1e-10;
    return rep;
}

} // namespace spintomo
