#include "selftest.hpp"

#include <algorithm>
#include <cmath>

#include "io.hpp"

namespace spintomo {

BlochVector random_bloch_in_ball(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> coord(-radius, radius);
    for (;;) {
        const BlochVector v{coord(rng), coord(rng), coord(rng)};
        if (v.norm2() <= radius * radius) return v;
    }
}

BlochVector random_bloch_on_sphere(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;) {
        BlochVector v{gauss(rng), gauss(rng), gauss(rng)};
        const double n = v.norm();
        if (n > 1e-6) return v * (1.0 / n);
    }
}

CMatrix random_hermitian(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix m(dim);
    for (int r = 0; r < dim; ++r) {
        m(r, r) = Complex(gauss(rng), 0.0);
        for (int c = r + 1; c < dim; ++c) {
            m(r, c) = Complex(0.5 * gauss(rng), 0.5 * gauss(rng));
            m(c, r) = std::conj(m(r, c));
        }
    }
    return m;
}

DensityMatrix random_qubit_state(std::mt19937_64& rng) {
    return DensityMatrix{projector_from_bloch(random_bloch_in_ball(rng))};
}

DensityMatrix random_pure_qubit_state(std::mt19937_64& rng) {
    return DensityMatrix{projector_from_bloch(random_bloch_on_sphere(rng))};
}

DensityMatrix random_density(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::exponential_distribution<double> expo(1.0);
    CMatrix m(dim);
    for (int term = 0; term < dim; ++term) {
        std::vector<Complex> psi(dim);
        double n2 = 0.0;
        for (int i = 0; i < dim; ++i) {
            psi[i] = Complex(gauss(rng), gauss(rng));
            n2 += std::norm(psi[i]);
        }
        const double w = expo(rng) / n2;
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) m(r, c) += Complex(w, 0.0) * psi[r] * std::conj(psi[c]);
    }
    const double tr = m.trace().real();
    return DensityMatrix{(1.0 / tr) * m};
}

namespace {

struct Suite {
    SelftestReport& report;
    std::uint64_t seed;
    int index = 0;

    std::mt19937_64 rng() { return std::mt19937_64(derive_trial_seed(seed, index)); }

    void add(const std::string& name, double worst, double tol, bool extra_ok = true,
             const std::string& note = "") {
        SelftestEntry e;
        e.name = name;
        e.worst = worst;
        e.pass = worst <= tol && extra_ok;
        e.note = e.pass ? note : (note.empty() ? "tolerance " + std::to_string(tol) : note);
        report.entries.push_back(e);
        ++index;
    }
};

PurityClass mode_of(int i) {
    switch (i % 3) {
        case 0: return PurityClass::AllPure;
        case 1: return PurityClass::AllMixed;
        default: return PurityClass::Heterogeneous;
    }
}

} // namespace

SelftestReport run_selftest(std::uint64_t seed, int iterations) {
    if (iterations < 1) raise(ErrorCode::InvalidArgument, "iterations must be positive");
    SelftestReport report;
    report.seed = seed;
    report.iterations = iterations;
    Suite suite{report, seed};

    { // trace-product symmetry
        auto rng = suite.rng();
        double worst = 0.0;
        for (int i = 0; i < iterations; ++i) {
            const int dim = 2 + i % 7;
            const CMatrix a = random_hermitian(dim, rng), b = random_hermitian(dim, rng);
            worst = std::max(worst, std::abs(trace_product(a, b) - trace_product(b, a)));
        }
        suite.add("cmatrix.trace_product_symmetry", worst, 1e-12);
    }
    { // 2x2 eigenvalues vs trace and determinant
        auto rng = suite.rng();
        double worst = 0.0;
        for (int i = 0; i < iterations; ++i) {
            const CMatrix a = random_hermitian(2, rng);
            const auto [l1, l2] = eig2_hermitian(a);
            worst = std::max(worst, std::abs(l1 + l2 - a.trace().real()));
            worst = std::max(worst, std::abs(l1 * l2 - determinant(a).real()));
        }
        suite.add("cmatrix.eig2_trace_det", worst, 1e-12);
    }
    { // Jacobi solver against eig2 and against spectral traces
        auto rng = suite.rng();
        double worst = 0.0;
        for (int i = 0; i < iterations; ++i) {
            const CMatrix a2 = random_hermitian(2, rng);
            const auto [l1, l2] = eig2_hermitian(a2);
            const auto full = eig_hermitian(a2);
            worst = std::max({worst, std::abs(full[0] - l1), std::abs(full[1] - l2)});

            const int dim = 2 + i % 7;
            const CMatrix a = random_hermitian(dim, rng);
            const auto eigs = eig_hermitian(a);
            double sum = 0.0, sum2 = 0.0;
            for (double l : eigs) {
                sum += l;
                sum2 += l * l;
            }
            worst = std::max(worst, std::abs(sum - a.trace().real()));
            worst = std::max(worst, std::abs(sum2 - trace_product(a, a).real()));
        }
        suite.add("cmatrix.eig_jacobi", worst, 1e-9);
    }
    { // Kronecker trace factorization
        auto rng = suite.rng();
        double worst = 0.0;
        for (int i = 0; i < iterations; ++i) {
            const CMatrix a = random_hermitian(2 + i % 2, rng), b = random_hermitian(2 + i % 3, rng);
            worst = std::max(worst, std::abs(kron(a, b).trace() - a.trace() * b.trace()));
        }
        suite.add("cmatrix.kron_trace", worst, 1e-12);
    }
    { // random quadruples validate in every mode
        double worst = 0.0;
        bool ok = true;
        for (int i = 0; i < iterations; ++i) {
            const PurityClass mode = mode_of(i);
            const SchemeQuadruple q = random_quadruple(derive_trial_seed(seed, 100 + i), mode);
            const ValidationReport rep = validate_quadruple(q.e);
            ok = ok && rep.pass && rep.purity == mode;
            worst = std::max({worst, rep.closure_residual, rep.alternation_residual});
        }
        suite.add("geometry.random_quadruple", worst, 1e-12, ok);
    }
    { // folding is an isometry and rejects flat angles
        auto rng = suite.rng();
        std::uniform_real_distribution<double> angle(0.3, M_PI - 0.3);
        double worst = 0.0;
        bool ok = true;
        for (int i = 0; i < iterations; ++i) {
            const double alpha = angle(rng);
            PlanarQuadrilateral pq;
            pq.vertices = {{{0.0, 0.0},
                            {1.0, 0.0},
                            {1.0 + std::cos(alpha), std::sin(alpha)},
                            {std::cos(alpha), std::sin(alpha)}}};
            const SchemeQuadruple q = fold_quadrilateral(pq, angle(rng));
            const BlochVector sum = q.e[0] + q.e[1] + q.e[2] + q.e[3];
            worst = std::max(worst, sum.norm());
            for (const BlochVector& e : q.e) worst = std::max(worst, std::abs(e.norm() - 1.0));
            try {
                fold_quadrilateral(pq, 0.0);
                ok = false;
            } catch (const Error& err) {
                ok = ok && err.code() == ErrorCode::DegenerateFold;
            }
        }
        suite.add("geometry.fold_isometry", worst, 1e-12, ok);
    }
    { // rebuilding from the first three vectors reproduces the fourth
        double worst = 0.0;
        for (int i = 0; i < iterations; ++i) {
            const SchemeQuadruple q = random_quadruple(derive_trial_seed(seed, 300 + i), mode_of(i));
            const SchemeQuadruple q2 = quadruple_from_triple(q.e[0], q.e[1], q.e[2]);
            worst = std::max(worst, (q2.e[3] - q.e[3]).norm());
        }
        suite.add("geometry.triple_idempotence", worst, 1e-12);
    }

    double orth = 0.0, routes = 0.0, identities = 0.0;
    bool indefinite = true;
    { // scheme identity battery over random quadruples
        for (int i = 0; i < iterations; ++i) {
            const SchemeQuadruple q = random_quadruple(derive_trial_seed(seed, 400 + i), mode_of(i));
            const Spin12Scheme s = build_scheme(q);
            const SchemeDiagnostics d = scheme_diagnostics(s);
            orth = std::max({orth, d.orthogonality_residual, d.completeness_residual});
            routes = std::max(routes, d.cramer_vs_inverse);
            identities = std::max({identities, d.three_term_residual_U, d.three_term_residual_D,
                                   d.trace_square_residual, d.sum_U_residual, d.sum_D_residual,
                                   d.trace_U_residual, d.trace_D_residual});
            indefinite = indefinite && d.quantizer_indefinite && d.det_R_residual <= 1e-10;
            if (d.equal_lengths)
                identities = std::max({identities, d.pairwise_residual_U, d.pairwise_residual_D});
        }
        suite.add("scheme.orthogonality_completeness", orth, 1e-10);
        suite.add("scheme.cramer_vs_inverse", routes, 1e-10);
        suite.add("scheme.trace_identities", identities, 1e-12, indefinite,
                  indefinite ? "" : "quantizer indefiniteness or det R failed");
    }

    { // single-qubit round trips, both directions
        auto rng = suite.rng();
        double worst = 0.0, dual = 0.0;
        for (int i = 0; i < iterations; ++i) {
            const Spin12Scheme s =
                i % 4 == 0 ? io::preset(i % 8 == 0 ? "example1" : "example2")
                           : build_scheme(random_quadruple(derive_trial_seed(seed, 500 + i),
                                                           mode_of(i)));
            const DensityMatrix rho = random_qubit_state(rng);
            const DensityMatrix back = inverse(forward(rho, s), s);
            worst = std::max(worst, frobenius_distance(back.mat, rho.mat));

            std::uniform_real_distribution<double> coeff(-0.5, 1.5);
            std::vector<double> w(4);
            double total = 0.0;
            do {
                total = 0.0;
                for (double& v : w) total += (v = coeff(rng));
            } while (std::abs(total) < 0.5);
            for (double& v : w) v *= 2.0 / total;
            const std::vector<double> w2 = apply_dequantizer(inverse(w, s).mat, s);
            for (int j = 0; j < 4; ++j) dual = std::max(dual, std::abs(w2[j] - w[j]));
        }
        suite.add("tomography.round_trip", worst, 1e-10);
        suite.add("tomography.dual_round_trip", dual, 1e-10);
    }
    { // forward output is a normalized tomogram and passes is_physical
        auto rng = suite.rng();
        double worst = 0.0;
        bool ok = true;
        for (int i = 0; i < iterations; ++i) {
            const Spin12Scheme s =
                build_scheme(random_quadruple(derive_trial_seed(seed, 600 + i), mode_of(i)));
            const Tomogram t = forward(random_qubit_state(rng), s);
            double total = 0.0;
            for (double v : t.w) {
                total += v;
                ok = ok && v >= -1e-12 && v <= 1.0 + 1e-12;
            }
            worst = std::max(worst, std::abs(total - 2.0));
            ok = ok && is_physical(t, s).pass;
        }
        suite.add("tomography.forward_range", worst, 1e-10, ok);
    }
    { // purity bound
        auto rng = suite.rng();
        double low = 1.0;
        bool ok = true;
        for (int i = 0; i < 10 * iterations; ++i) {
            const double p = purity(random_qubit_state(rng));
            low = std::min(low, p);
            ok = ok && p <= 1.0 + 1e-12;
        }
        ok = ok && std::abs(purity(DensityMatrix{0.5 * CMatrix::identity(2)}) - 0.5) < 1e-15;
        suite.add("tomography.purity_bound", 0.5 - low, 1e-12, ok);
    }
    { // simulation determinism and coarse convergence
        auto rng = suite.rng();
        const Spin12Scheme s = io::preset("example1");
        const DensityMatrix rho = random_pure_qubit_state(rng);
        const CountRecord a = simulate_counts(rho, s, 200000, seed ^ 0xabcdef);
        const CountRecord b = simulate_counts(rho, s, 200000, seed ^ 0xabcdef);
        const bool deterministic = a.successes == b.successes;
        const Estimate est = estimate_state(a, s, rho);
        const bool trace_ok = std::abs(est.metrics.trace - 1.0) <= 1e-9;
        suite.add("tomography.simulation", est.metrics.frobenius_error, 5e-2,
                  deterministic && trace_ok);
    }

    { // index bijections, exhaustively for n <= 4
        bool ok = true;
        for (int n = 1; n <= 4; ++n) {
            for (int k = 1; k <= (1 << n); ++k) ok = ok && g_inverse(g_map(k, n)) == k;
            for (int j = 1; j <= (1 << (2 * n)); ++j) ok = ok && f_map(f_inverse(j, n)) == j;
        }
        ok = ok && g_map(1, 2) == std::vector<int>({1, 1}) &&
             g_map(3, 2) == std::vector<int>({2, 1}) && f_map({2, 3}) == 7;
        suite.add("multiqubit.index_maps", ok ? 0.0 : 1.0, 0.0, ok);
    }
    { // tensor identities, exhaustive for two factors, sampled for three
        const TensorScheme two =
            build_tensor_scheme({io::preset("example1"), io::preset("example2")});
        const TensorIdentityReport r2 = verify_tensor_identities(two, VerifyMode::Exhaustive);
        const TensorScheme three = build_tensor_scheme(
            {io::preset("example1"),
             build_scheme(random_quadruple(derive_trial_seed(seed, 700), PurityClass::AllMixed)),
             build_scheme(random_quadruple(derive_trial_seed(seed, 701), PurityClass::AllPure))});
        const TensorIdentityReport r3 =
            verify_tensor_identities(three, VerifyMode::Sampled, seed, std::max(200, iterations));
        const double worst =
            std::max({r2.orthogonality_residual, r2.completeness_residual, r2.sum_U_residual,
                      r2.sum_D_residual, r2.trace_U_residual, r2.trace_D_residual,
                      r3.orthogonality_residual, r3.completeness_residual, r3.sum_U_residual,
                      r3.sum_D_residual, r3.trace_U_residual, r3.trace_D_residual});
        suite.add("multiqubit.identities", worst, 1e-10, r2.pass && r3.pass);
    }
    { // multi-qubit round trips and separability factorization
        auto rng = suite.rng();
        const TensorScheme two =
            build_tensor_scheme({io::preset("example1"), io::preset("example2")});
        double worst = 0.0;
        for (int i = 0; i < std::max(10, iterations / 4); ++i) {
            const DensityMatrix rho = random_density(4, rng);
            const DensityMatrix back = inverse_n(forward_n(rho, two), two);
            worst = std::max(worst, frobenius_distance(back.mat, rho.mat));
        }
        const DensityMatrix a = random_qubit_state(rng), b = random_qubit_state(rng);
        const Tomogram joint = forward_n(DensityMatrix{kron(a.mat, b.mat)}, two);
        const Tomogram ta = forward(a, two.factors[0]), tb = forward(b, two.factors[1]);
        for (int j1 = 1; j1 <= 4; ++j1)
            for (int j2 = 1; j2 <= 4; ++j2)
                worst = std::max(worst, std::abs(joint.w[f_map({j1, j2}) - 1] -
                                                 ta.w[j1 - 1] * tb.w[j2 - 1]));
        const TensorScheme three = build_tensor_scheme(
            {io::preset("example1"), io::preset("example2"), io::preset("example1")});
        for (int i = 0; i < 5; ++i) {
            const DensityMatrix rho = random_density(8, rng);
            const DensityMatrix back = inverse_n(forward_n(rho, three), three);
            worst = std::max(worst, frobenius_distance(back.mat, rho.mat));
        }
        suite.add("multiqubit.round_trip", worst, 1e-9);
    }
    { // JSON round trips are lossless
        auto rng = suite.rng();
        double worst = 0.0;
        bool ok = true;
        for (int i = 0; i < std::max(10, iterations / 10); ++i) {
            const Spin12Scheme s = build_scheme(
                random_quadruple(derive_trial_seed(seed, 800 + i), mode_of(i)), {},
                QuantizerMethod::Cramer, "selftest");
            const Spin12Scheme s2 = io::scheme_from_json(io::scheme_to_json(s));
            for (int k = 0; k < 4; ++k) {
                ok = ok && s.quadruple.e[k].x == s2.quadruple.e[k].x &&
                     s.quadruple.e[k].y == s2.quadruple.e[k].y &&
                     s.quadruple.e[k].z == s2.quadruple.e[k].z;
                worst = std::max(worst, max_abs_diff(s.D[k], s2.D[k]));
            }
            const DensityMatrix rho = random_density(4, rng);
            const DensityMatrix rho2 = io::state_from_json(io::state_to_json(rho));
            worst = std::max(worst, max_abs_diff(rho.mat, rho2.mat));

            const Tomogram t = forward(random_qubit_state(rng), s);
            const Tomogram t2 = io::tomogram_from_json(io::tomogram_to_json(t));
            ok = ok && t.w == t2.w && t.scheme_label == t2.scheme_label;

            CountRecord c = simulate_counts(random_qubit_state(rng), s, 1000, seed + i);
            const CountRecord c2 = io::counts_from_json(io::counts_to_json(c));
            ok = ok && c.successes == c2.successes && c.shots == c2.shots && c.seed == c2.seed;
        }
        const TensorScheme two =
            build_tensor_scheme({io::preset("example1"), io::preset("example2")});
        const TensorScheme two2 = io::tensor_scheme_from_json(io::tensor_scheme_to_json(two));
        ok = ok && two2.n() == 2 && two2.factors[0].label == "example1";
        suite.add("io.round_trip", worst, 0.0, ok);
    }

    report.pass = true;
    for (const SelftestEntry& e : report.entries) report.pass = report.pass && e.pass;
    return report;
}

} // namespace spintomo
