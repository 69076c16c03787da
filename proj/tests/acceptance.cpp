// Acceptance gates for the library. Each numbered criterion prints exactly
// one PASS/FAIL line with the measured residuals; the exit code is the
// number of failing criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "io.hpp"

using namespace spintomo;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << v;
    return os.str();
}

void report(int n, const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << n << ": " << name;
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << std::endl;
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

CMatrix m2(Complex a, Complex b, Complex c, Complex d) {
    CMatrix m(2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

const Complex I(0.0, 1.0);

SchemeQuadruple example1_quadruple() {
    return quadruple_from_vectors({BlochVector{0.0, 0.8, 0.6}, BlochVector{0.8, 0.0, -0.6},
                                   BlochVector{0.0, -0.8, 0.6}, BlochVector{-0.8, 0.0, -0.6}});
}

SchemeQuadruple example2_quadruple() {
    const double t = 1.0 / 3.0;
    return quadruple_from_vectors({BlochVector{0.0, -2.0 * t, t}, BlochVector{2.0 * t, 0.0, -t},
                                   BlochVector{0.0, 2.0 * t, t}, BlochVector{-2.0 * t, 0.0, -t}});
}

std::array<CMatrix, 4> example1_U_ref() {
    const double f = 1.0 / 5.0;
    return {f * m2(4.0, -2.0 * I, 2.0 * I, 1.0), f * m2(1.0, 2.0, 2.0, 4.0),
            f * m2(4.0, 2.0 * I, -2.0 * I, 1.0), f * m2(1.0, -2.0, -2.0, 4.0)};
}

std::array<CMatrix, 4> example1_D_ref() {
    const Complex q(0.0, 5.0 / 4.0);
    return {0.5 * m2(4.0 / 3.0, -q, q, -1.0 / 3.0),
            0.5 * m2(-1.0 / 3.0, 5.0 / 4.0, 5.0 / 4.0, 4.0 / 3.0),
            0.5 * m2(4.0 / 3.0, q, -q, -1.0 / 3.0),
            0.5 * m2(-1.0 / 3.0, -5.0 / 4.0, -5.0 / 4.0, 4.0 / 3.0)};
}

std::array<CMatrix, 4> example2_U_ref() {
    const double f = 1.0 / 3.0;
    return {f * m2(2.0, I, -I, 1.0), f * m2(1.0, 1.0, 1.0, 2.0), f * m2(2.0, -I, I, 1.0),
            f * m2(1.0, -1.0, -1.0, 2.0)};
}

std::array<CMatrix, 4> example2_D_ref() {
    const Complex q(0.0, 3.0 / 2.0);
    return {0.5 * m2(2.0, q, -q, -1.0), 0.5 * m2(-1.0, 3.0 / 2.0, 3.0 / 2.0, 2.0),
            0.5 * m2(2.0, -q, q, -1.0), 0.5 * m2(-1.0, -3.0 / 2.0, -3.0 / 2.0, 2.0)};
}

PurityClass mode_of(int i) {
    switch (i % 3) {
        case 0: return PurityClass::AllPure;
        case 1: return PurityClass::AllMixed;
        default: return PurityClass::Heterogeneous;
    }
}

double orthogonality_residual(const std::array<CMatrix, 4>& U, const std::array<CMatrix, 4>& D) {
    double worst = 0.0;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            const double target = j == k ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(trace_product(U[j], D[k]) - Complex(target, 0.0)));
        }
    return worst;
}

double completeness_residual(const std::array<CMatrix, 4>& U, const std::array<CMatrix, 4>& D) {
    double worst = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int ap = 0; ap < 2; ++ap)
                for (int bp = 0; bp < 2; ++bp) {
                    Complex sum(0.0, 0.0);
                    for (int j = 0; j < 4; ++j) sum += U[j](a, b) * D[j](bp, ap);
                    const double target = (a == ap && b == bp) ? 1.0 : 0.0;
                    worst = std::max(worst, std::abs(sum - Complex(target, 0.0)));
                }
    return worst;
}

double tomogram_sum(const std::vector<double>& w) {
    double s = 0.0;
    for (const double v : w) s += v;
    return s;
}

// ---- criteria ----------------------------------------------------------------

void criterion1() {
    const Spin12Scheme s = build_scheme(example1_quadruple());
    const auto u_ref = example1_U_ref();
    const auto d_ref = example1_D_ref();
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
        worst = std::max(worst, max_abs_diff(s.U[k], u_ref[k]));
        worst = std::max(worst, max_abs_diff(s.D[k], d_ref[k]));
    }
    report(1, "first reference quadruple reproduces its published matrices", worst <= 1e-14,
           "max deviation " + sci(worst) + ", tol 1e-14");
}

void criterion2() {
    const Spin12Scheme s = build_scheme(example2_quadruple());
    const auto u_ref = example2_U_ref();
    const auto d_ref = example2_D_ref();
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
        worst = std::max(worst, max_abs_diff(s.U[k], u_ref[k]));
        worst = std::max(worst, max_abs_diff(s.D[k], d_ref[k]));
    }
    report(2, "second reference quadruple reproduces its published matrices", worst <= 1e-14,
           "max deviation " + sci(worst) + ", tol 1e-14");
}

void criterion3() {
    const auto t0 = Clock::now();
    const int count = 1000;
    double worst_orth = 0.0, worst_comp = 0.0, worst_cvi = 0.0;
    for (int i = 0; i < count; ++i) {
        const SchemeQuadruple q = random_quadruple(derive_trial_seed(9001, i), mode_of(i));
        const auto U = build_dequantizer(q);
        const auto Dc = build_quantizer_cramer(q);
        const auto Di = build_quantizer_inverse(q);
        worst_orth = std::max(worst_orth, orthogonality_residual(U, Dc));
        worst_comp = std::max(worst_comp, completeness_residual(U, Dc));
        for (int k = 0; k < 4; ++k)
            worst_cvi = std::max(worst_cvi, max_abs_diff(Dc[k], Di[k]));
    }
    const double elapsed = seconds_since(t0);
    const bool pass = worst_orth <= 1e-10 && worst_comp <= 1e-10 && worst_cvi <= 1e-10 &&
                      elapsed < 5.0;
    std::ostringstream detail;
    detail << count << " random quadruples, orthogonality " << sci(worst_orth)
           << ", completeness " << sci(worst_comp) << ", cramer vs inverse " << sci(worst_cvi)
           << ", tol 1e-10, " << std::fixed << std::setprecision(2) << elapsed << "s";
    report(3, "random quadruples satisfy duality both ways", pass, detail.str());
}

void criterion4() {
    // Single qubit: both presets plus one random scheme per purity mode.
    std::vector<Spin12Scheme> singles{build_scheme(example1_quadruple()),
                                      build_scheme(example2_quadruple())};
    for (int m = 0; m < 3; ++m)
        singles.push_back(build_scheme(random_quadruple(derive_trial_seed(9002, m), mode_of(m))));

    double worst1 = 0.0;
    for (std::size_t si = 0; si < singles.size(); ++si) {
        std::mt19937_64 rng(derive_trial_seed(9102, si));
        for (int i = 0; i < 1000; ++i) {
            const DensityMatrix rho = random_qubit_state(rng);
            const DensityMatrix back = inverse(forward(rho, singles[si]), singles[si]);
            worst1 = std::max(worst1, max_abs_diff(back.mat, rho.mat));
        }
    }

    // Two qubits: the Bell state is mandatory, then general (mostly
    // entangled) densities.
    const TensorScheme two =
        build_tensor_scheme({build_scheme(example1_quadruple()), build_scheme(example2_quadruple())});
    double worst2 = 0.0;
    {
        CMatrix bell(4);
        bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = Complex(0.5, 0.0);
        const DensityMatrix rho = density_from_matrix(bell);
        worst2 = max_abs_diff(inverse_n(forward_n(rho, two), two).mat, rho.mat);
        std::mt19937_64 rng(derive_trial_seed(9202, 0));
        for (int i = 0; i < 40; ++i) {
            const DensityMatrix r = random_density(4, rng);
            worst2 = std::max(worst2, max_abs_diff(inverse_n(forward_n(r, two), two).mat, r.mat));
        }
    }

    // Three qubits: GHZ plus random densities.
    const TensorScheme three = build_tensor_scheme({build_scheme(example1_quadruple()),
                                                    build_scheme(example2_quadruple()),
                                                    build_scheme(example1_quadruple())});
    double worst3 = 0.0;
    {
        CMatrix ghz(8);
        ghz(0, 0) = ghz(0, 7) = ghz(7, 0) = ghz(7, 7) = Complex(0.5, 0.0);
        const DensityMatrix rho = density_from_matrix(ghz);
        worst3 = max_abs_diff(inverse_n(forward_n(rho, three), three).mat, rho.mat);
        std::mt19937_64 rng(derive_trial_seed(9202, 1));
        for (int i = 0; i < 10; ++i) {
            const DensityMatrix r = random_density(8, rng);
            worst3 =
                std::max(worst3, max_abs_diff(inverse_n(forward_n(r, three), three).mat, r.mat));
        }
    }

    const bool pass = worst1 <= 1e-10 && worst2 <= 1e-9 && worst3 <= 1e-9;
    report(4, "round trips recover every state", pass,
           "single " + sci(worst1) + " (tol 1e-10), two-qubit " + sci(worst2) +
               ", three-qubit " + sci(worst3) + " (tol 1e-9), Bell and GHZ included");
}

void criterion5() {
    std::vector<Spin12Scheme> singles{build_scheme(example1_quadruple()),
                                      build_scheme(example2_quadruple())};
    for (int m = 0; m < 3; ++m)
        singles.push_back(build_scheme(random_quadruple(derive_trial_seed(9003, m), mode_of(m))));

    double worst_sum_w = 0.0, worst_ops = 0.0;
    for (std::size_t si = 0; si < singles.size(); ++si) {
        const Spin12Scheme& s = singles[si];
        const CMatrix sum_U = s.U[0] + s.U[1] + s.U[2] + s.U[3];
        const CMatrix sum_D = s.D[0] + s.D[1] + s.D[2] + s.D[3];
        worst_ops = std::max(worst_ops,
                             max_abs_diff(sum_U, Complex(2.0, 0.0) * CMatrix::identity(2)));
        worst_ops = std::max(worst_ops, max_abs_diff(sum_D, CMatrix::identity(2)));
        for (int k = 0; k < 4; ++k) {
            worst_ops = std::max(worst_ops, std::abs(s.U[k].trace() - Complex(1.0, 0.0)));
            worst_ops = std::max(worst_ops, std::abs(s.D[k].trace() - Complex(0.5, 0.0)));
        }
        std::mt19937_64 rng(derive_trial_seed(9103, si));
        for (int i = 0; i < 200; ++i) {
            const Tomogram t = forward(random_qubit_state(rng), s);
            worst_sum_w = std::max(worst_sum_w, std::abs(tomogram_sum(t.w) - 2.0));
        }
    }

    // Two-qubit composition: per-component traces and the operator sums.
    const TensorScheme two =
        build_tensor_scheme({build_scheme(example1_quadruple()), build_scheme(example2_quadruple())});
    double worst_tensor_ops = 0.0, worst_sum_w2 = 0.0;
    CMatrix sum_u(4), sum_d(4);
    for (int j = 1; j <= 16; ++j) {
        const CMatrix u = tensor_component(two, j, ComponentKind::Dequantizer);
        const CMatrix d = tensor_component(two, j, ComponentKind::Quantizer);
        worst_tensor_ops = std::max(worst_tensor_ops, std::abs(u.trace() - Complex(1.0, 0.0)));
        worst_tensor_ops = std::max(worst_tensor_ops, std::abs(d.trace() - Complex(0.25, 0.0)));
        sum_u = sum_u + u;
        sum_d = sum_d + d;
    }
    worst_tensor_ops =
        std::max(worst_tensor_ops, max_abs_diff(sum_u, Complex(4.0, 0.0) * CMatrix::identity(4)));
    worst_tensor_ops = std::max(worst_tensor_ops, max_abs_diff(sum_d, CMatrix::identity(4)));
    {
        std::mt19937_64 rng(derive_trial_seed(9203, 0));
        for (int i = 0; i < 50; ++i) {
            const Tomogram t = forward_n(random_density(4, rng), two);
            worst_sum_w2 = std::max(worst_sum_w2, std::abs(tomogram_sum(t.w) - 4.0));
        }
    }

    const bool pass = worst_sum_w <= 1e-9 && worst_sum_w2 <= 1e-9 && worst_ops <= 1e-10 &&
                      worst_tensor_ops <= 1e-10;
    report(5, "normalization identities hold", pass,
           "sum w vs 2 " + sci(worst_sum_w) + ", vs 4 " + sci(worst_sum_w2) +
               " (tol 1e-9); operator sums and traces " + sci(std::max(worst_ops, worst_tensor_ops)) +
               " (tol 1e-10)");
}

void criterion6() {
    bool all_indefinite = true;
    double worst_det = -1.0; // most positive det D_k seen
    const auto check = [&](const SchemeQuadruple& q) {
        const auto D = build_quantizer_cramer(q);
        for (int k = 0; k < 4; ++k) {
            const double det = determinant(D[k]).real();
            worst_det = std::max(worst_det, det);
            const auto [hi, lo] = eig2_hermitian(D[k]);
            if (!(det < 0.0 && hi > 0.0 && lo < 0.0)) all_indefinite = false;
        }
    };
    check(example1_quadruple());
    check(example2_quadruple());
    for (int i = 0; i < 1000; ++i)
        check(random_quadruple(derive_trial_seed(9004, i), mode_of(i)));

    // Closed-form eigenvalues of the first reference quantizer component.
    const auto [hi, lo] = quantizer_eigenvalues(example1_quadruple(), 0);
    const double r = 5.0 * std::sqrt(13.0) / 24.0;
    const double closed = std::max(std::abs(hi - (0.25 + r)), std::abs(lo - (0.25 - r)));
    const auto numeric = eig2_hermitian(build_quantizer_cramer(example1_quadruple())[0]);
    const double vs_numeric =
        std::max(std::abs(numeric.first - hi), std::abs(numeric.second - lo));

    const bool pass = all_indefinite && closed <= 1e-10 && vs_numeric <= 1e-10;
    report(6, "quantizer components are indefinite with the closed-form spectrum", pass,
           "1002 quadruples, largest det D " + sci(worst_det) + ", closed form vs reference " +
               sci(closed) + ", vs numeric " + sci(vs_numeric) + " (tol 1e-10)");
}

void criterion7() {
    const auto traces = [](const std::array<CMatrix, 4>& A) {
        std::array<std::array<double, 4>, 4> t{};
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) t[j][k] = trace_product(A[j], A[k]).real();
        return t;
    };
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

    double worst_three = 0.0;
    for (int i = 0; i < 300; ++i) {
        const SchemeQuadruple q = random_quadruple(derive_trial_seed(9005, i), mode_of(i));
        const auto U = build_dequantizer(q);
        const auto D = build_quantizer_cramer(q);
        worst_three = std::max({worst_three, three_term(traces(U)), three_term(traces(D))});
    }

    // Pairwise identities need a common vector length; pure random schemes
    // and both presets provide it.
    double worst_pair = 0.0;
    const auto check_pair = [&](const SchemeQuadruple& q) {
        const auto U = build_dequantizer(q);
        const auto D = build_quantizer_cramer(q);
        worst_pair = std::max({worst_pair, pairwise(traces(U)), pairwise(traces(D))});
    };
    check_pair(example1_quadruple());
    check_pair(example2_quadruple());
    for (int i = 0; i < 100; ++i)
        check_pair(random_quadruple(derive_trial_seed(9105, i), PurityClass::AllPure));

    const bool pass = worst_three <= 1e-12 && worst_pair <= 1e-12;
    report(7, "trace product identities hold", pass,
           "three-term " + sci(worst_three) + " over 300 arbitrary quadruples, pairwise " +
               sci(worst_pair) + " over 102 equal-length quadruples (tol 1e-12)");
}

void criterion8() {
    std::mt19937_64 rng(derive_trial_seed(9006, 0));
    double min_purity = 1.0;
    for (int i = 0; i < 10000; ++i)
        min_purity = std::min(min_purity, purity(random_qubit_state(rng)));
    const double at_mixed =
        purity(DensityMatrix{m2(0.5, 0.0, 0.0, 0.5)});
    const bool pass = min_purity >= 0.5 - 1e-12 && std::abs(at_mixed - 0.5) <= 1e-15;
    report(8, "purity is bounded below by one half", pass,
           "min over 10000 states " + sci(min_purity - 0.5) + " above 1/2, maximally mixed gives " +
               sci(std::abs(at_mixed - 0.5)) + " deviation");
}

void criterion9() {
    const Spin12Scheme s1 = build_scheme(example1_quadruple());
    const Spin12Scheme s2 = build_scheme(example2_quadruple());
    bool all_accepted = true;
    for (const Spin12Scheme* s : {&s1, &s2}) {
        std::mt19937_64 rng(derive_trial_seed(9007, s == &s1 ? 0 : 1));
        for (int i = 0; i < 500; ++i) {
            const Tomogram t = forward(random_qubit_state(rng), *s);
            if (!is_physical(t, *s).pass) all_accepted = false;
        }
    }
    const PhysicalityReport reject = is_physical(std::vector<double>{1.0, 1.0, 0.0, 0.0}, s1);
    const bool pass = all_accepted && !reject.pass && !reject.det_ok;
    report(9, "physicality gate accepts honest tomograms and rejects the counterexample", pass,
           std::string("1000 sampled tomograms accepted: ") + (all_accepted ? "yes" : "no") +
               ", (1,1,0,0) rejected via determinant: " + (!reject.pass ? "yes" : "no"));
}

void criterion10() {
    const auto t0 = Clock::now();
    const Spin12Scheme s = build_scheme(example1_quadruple());
    const DensityMatrix rho{projector_from_bloch({0.6, 0.0, 0.8})};

    const long long levels[3] = {100, 10000, 1000000};
    double median[3] = {0.0, 0.0, 0.0};
    for (int li = 0; li < 3; ++li) {
        std::vector<double> errors;
        for (int trial = 0; trial < 100; ++trial) {
            const std::uint64_t seed = derive_trial_seed(4242, 100 * li + trial);
            const CountRecord c = simulate_counts(rho, s, levels[li], seed);
            const Estimate est = estimate_state(c, s);
            errors.push_back(frobenius_distance(est.rho.mat, rho.mat));
        }
        std::sort(errors.begin(), errors.end());
        median[li] = 0.5 * (errors[49] + errors[50]);
    }

    // Least-squares slope of log10(median) against log10(shots).
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int li = 0; li < 3; ++li) {
        const double x = std::log10(static_cast<double>(levels[li]));
        const double y = std::log10(median[li]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
    const double elapsed = seconds_since(t0);

    const bool pass = median[0] > median[1] && median[1] > median[2] && slope >= -0.65 &&
                      slope <= -0.35 && elapsed < 60.0;
    std::ostringstream detail;
    detail << "medians " << sci(median[0]) << " / " << sci(median[1]) << " / " << sci(median[2])
           << " at 1e2/1e4/1e6 shots, slope " << std::fixed << std::setprecision(3) << slope
           << " (want -0.5 +- 0.15), " << std::setprecision(2) << elapsed << "s";
    report(10, "statistical error shrinks like one over root shots", pass, detail.str());
}

void criterion11() {
    PlanarQuadrilateral q;
    q.vertices = {{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}};
    q.fold_diagonal = PlanarQuadrilateral::FoldDiagonal::V0V2;

    const SchemeQuadruple folded = fold_quadrilateral(q, M_PI / 2.0);
    const BlochVector closure =
        folded.e[0] + folded.e[1] + folded.e[2] + folded.e[3];
    double length_dev = 0.0;
    for (const BlochVector& e : folded.e)
        length_dev = std::max(length_dev, std::abs(e.norm() - 1.0));
    const double delta1 = coplanarity_determinants(folded.e)[0];

    bool flat_rejected = true;
    for (const double angle : {0.0, M_PI}) {
        try {
            fold_quadrilateral(q, angle);
            flat_rejected = false;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateFold) flat_rejected = false;
        }
    }

    const Tolerances tols;
    const bool pass = closure.norm() <= 1e-12 && length_dev <= 1e-12 &&
                      std::abs(delta1) > tols.coplanar && flat_rejected;
    report(11, "folding the unit square yields a valid pure quadruple", pass,
           "closure " + sci(closure.norm()) + ", edge length deviation " + sci(length_dev) +
               " (tol 1e-12), |Delta_1| " + sci(std::abs(delta1)) + ", flat folds rejected: " +
               (flat_rejected ? "yes" : "no"));
}

} // namespace

int main() {
    std::cout << "spintomo acceptance suite\n";
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    std::cout << (11 - failures) << "/11 criteria passed" << std::endl;
    return failures;
}
