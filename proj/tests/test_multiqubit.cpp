#include <doctest.h>

#include <cmath>
#include <optional>

#include "multiqubit.hpp"

using namespace spintomo;

namespace {

template <typename F>
std::optional<ErrorCode> thrown_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

Spin12Scheme example1_scheme() {
    return build_scheme(
        quadruple_from_vectors({BlochVector{0.0, 0.8, 0.6}, BlochVector{0.8, 0.0, -0.6},
                                BlochVector{0.0, -0.8, 0.6}, BlochVector{-0.8, 0.0, -0.6}}),
        {}, QuantizerMethod::Cramer, "ex1");
}

Spin12Scheme example2_scheme() {
    const double t = 1.0 / 3.0;
    return build_scheme(
        quadruple_from_vectors({BlochVector{0.0, -2.0 * t, t}, BlochVector{2.0 * t, 0.0, -t},
                                BlochVector{0.0, 2.0 * t, t}, BlochVector{-2.0 * t, 0.0, -t}}),
        {}, QuantizerMethod::Cramer, "ex2");
}

DensityMatrix bell_state() {
    CMatrix m(4);
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = Complex(0.5, 0.0);
    return density_from_matrix(m);
}

} // namespace

TEST_CASE("index bijections") {
    // Base-2 digit code, 1-based, first factor most significant.
    CHECK(g_map(1, 2) == std::vector<int>{1, 1});
    CHECK(g_map(2, 2) == std::vector<int>{1, 2});
    CHECK(g_map(3, 2) == std::vector<int>{2, 1});
    CHECK(g_map(4, 2) == std::vector<int>{2, 2});
    CHECK(g_inverse({2, 1}) == 3);

    // Base-4 analogue for component indices.
    CHECK(f_map({2, 3}) == 7);
    CHECK(f_inverse(7, 2) == std::vector<int>{2, 3});
    CHECK(f_map({1, 1, 1}) == 1);
    CHECK(f_map({4, 4, 4}) == 64);

    for (int n = 1; n <= 3; ++n) {
        for (int k = 1; k <= (1 << n); ++k) CHECK(g_inverse(g_map(k, n)) == k);
        for (int j = 1; j <= (1 << (2 * n)); ++j) CHECK(f_map(f_inverse(j, n)) == j);
    }

    CHECK(thrown_code([] { g_map(0, 2); }) == ErrorCode::InvalidArgument);
    CHECK(thrown_code([] { g_map(5, 2); }) == ErrorCode::InvalidArgument);
    CHECK(thrown_code([] { g_map(1, 0); }) == ErrorCode::InvalidArgument);
    CHECK(thrown_code([] { f_inverse(17, 2); }) == ErrorCode::InvalidArgument);
    CHECK(thrown_code([] { g_inverse({1, 3}); }) == ErrorCode::InvalidArgument);
    CHECK(thrown_code([] { f_map({0, 2}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("build_tensor_scheme") {
    const TensorScheme ts = build_tensor_scheme({example1_scheme(), example2_scheme()}, 5, "pair");
    CHECK(ts.n() == 2);
    CHECK(ts.dim() == 4);
    CHECK(ts.component_count() == 16);
    CHECK(ts.label == "pair");

    CHECK(thrown_code([] { build_tensor_scheme({}); }) == ErrorCode::InvalidArgument);
    CHECK(thrown_code([] {
              build_tensor_scheme(std::vector<Spin12Scheme>(7, example1_scheme()));
          }) == ErrorCode::InvalidArgument);
    CHECK(thrown_code([] { build_tensor_scheme({example1_scheme()}, 0); }) ==
          ErrorCode::InvalidArgument);
}

TEST_CASE("tensor components") {
    const Spin12Scheme s1 = example1_scheme();
    const Spin12Scheme s2 = example2_scheme();

    const TensorScheme one = build_tensor_scheme({s1});
    for (int j = 1; j <= 4; ++j) {
        CHECK(max_abs_diff(tensor_component(one, j, ComponentKind::Dequantizer), s1.U[j - 1]) ==
              0.0);
        CHECK(max_abs_diff(tensor_component(one, j, ComponentKind::Quantizer), s1.D[j - 1]) ==
              0.0);
    }

    const TensorScheme two = build_tensor_scheme({s1, s2});
    for (int j = 1; j <= 16; ++j) {
        const auto digits = f_inverse(j, 2);
        const CMatrix u = tensor_component(two, j, ComponentKind::Dequantizer);
        CHECK(max_abs_diff(u, kron(s1.U[digits[0] - 1], s2.U[digits[1] - 1])) < 1e-15);
        const CMatrix d = tensor_component(two, j, ComponentKind::Quantizer);
        CHECK(max_abs_diff(d, kron(s1.D[digits[0] - 1], s2.D[digits[1] - 1])) < 1e-15);
        CHECK(std::abs(u.trace() - Complex(1.0, 0.0)) < 1e-14);
        CHECK(std::abs(d.trace() - Complex(0.25, 0.0)) < 1e-14);
    }

    CHECK(thrown_code([&] { tensor_component(two, 0, ComponentKind::Dequantizer); }) ==
          ErrorCode::InvalidArgument);
    CHECK(thrown_code([&] { tensor_component(two, 17, ComponentKind::Dequantizer); }) ==
          ErrorCode::InvalidArgument);
}

TEST_CASE("materialize limit gates dense components only") {
    const TensorScheme tight = build_tensor_scheme({example1_scheme(), example2_scheme()}, 1);
    CHECK(thrown_code([&] { tensor_component(tight, 1, ComponentKind::Quantizer); }) ==
          ErrorCode::MaterializeLimitExceeded);

    // The maps keep working in factored form.
    const DensityMatrix rho = bell_state();
    const Tomogram t = forward_n(rho, tight);
    REQUIRE(t.w.size() == 16);
    double sum = 0.0;
    for (const double w : t.w) sum += w;
    CHECK(sum == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(max_abs_diff(inverse_n(t, tight).mat, rho.mat) < 1e-12);
}

TEST_CASE("round trips") {
    const TensorScheme two = build_tensor_scheme({example1_scheme(), example2_scheme()});

    SUBCASE("bell state") {
        const DensityMatrix rho = bell_state();
        const Tomogram t = forward_n(rho, two);
        CHECK(max_abs_diff(inverse_n(t, two).mat, rho.mat) < 1e-12);
    }

    SUBCASE("product state factorizes") {
        const CMatrix a = projector_from_bloch({0.0, 0.8, 0.6});
        const CMatrix b = projector_from_bloch({0.0, 0.0, 0.5});
        const DensityMatrix rho = density_from_matrix(kron(a, b));
        const Tomogram t = forward_n(rho, two);

        const Spin12Scheme s1 = example1_scheme();
        const Spin12Scheme s2 = example2_scheme();
        const Tomogram ta = forward(density_from_matrix(a), s1);
        const Tomogram tb = forward(density_from_matrix(b), s2);
        for (int j = 1; j <= 16; ++j) {
            const auto digits = f_inverse(j, 2);
            CHECK(t.w[j - 1] ==
                  doctest::Approx(ta.w[digits[0] - 1] * tb.w[digits[1] - 1]).epsilon(1e-12));
        }
        CHECK(max_abs_diff(inverse_n(t, two).mat, rho.mat) < 1e-12);
    }

    SUBCASE("three factors") {
        const TensorScheme three =
            build_tensor_scheme({example1_scheme(), example2_scheme(), example1_scheme()});
        CMatrix ghz(8);
        ghz(0, 0) = ghz(0, 7) = ghz(7, 0) = ghz(7, 7) = Complex(0.5, 0.0);
        const DensityMatrix rho = density_from_matrix(ghz);
        const Tomogram t = forward_n(rho, three);
        REQUIRE(t.w.size() == 64);
        double sum = 0.0;
        for (const double w : t.w) sum += w;
        CHECK(sum == doctest::Approx(8.0).epsilon(1e-11));
        CHECK(max_abs_diff(inverse_n(t, three).mat, rho.mat) < 1e-11);
    }
}

TEST_CASE("dimension mismatch") {
    const TensorScheme two = build_tensor_scheme({example1_scheme(), example2_scheme()});
    CMatrix wrong(2);
    wrong(0, 0) = wrong(1, 1) = Complex(0.5, 0.0);
    CHECK(thrown_code([&] { forward_n(DensityMatrix{wrong}, two); }) ==
          ErrorCode::DimensionMismatch);
    CHECK(thrown_code([&] { inverse_n(std::vector<double>(4, 0.5), two); }) ==
          ErrorCode::DimensionMismatch);
}

TEST_CASE("identity verification") {
    const TensorScheme one = build_tensor_scheme({example1_scheme()});
    const TensorIdentityReport r1 = verify_tensor_identities(one, VerifyMode::Exhaustive);
    CHECK(r1.pass);
    CHECK(r1.exhaustive);
    CHECK(r1.orthogonality_pairs == 16);

    const TensorScheme two = build_tensor_scheme({example1_scheme(), example2_scheme()});
    const TensorIdentityReport r2 = verify_tensor_identities(two, VerifyMode::Exhaustive);
    CHECK(r2.pass);
    CHECK(r2.orthogonality_pairs == 256);
    CHECK(r2.completeness_tuples == 256);
    CHECK(r2.orthogonality_residual < 1e-12);
    CHECK(r2.completeness_residual < 1e-12);
    CHECK(r2.trace_U_residual < 1e-13);
    CHECK(r2.trace_D_residual < 1e-13);
    CHECK(r2.sum_U_residual < 1e-12);
    CHECK(r2.sum_D_residual < 1e-12);

    const TensorScheme three =
        build_tensor_scheme({example1_scheme(), example2_scheme(), example1_scheme()});
    CHECK(thrown_code([&] { verify_tensor_identities(three, VerifyMode::Exhaustive); }) ==
          ErrorCode::InvalidArgument);
    const TensorIdentityReport r3 = verify_tensor_identities(three, VerifyMode::Sampled, 11, 200);
    CHECK(r3.pass);
    CHECK_FALSE(r3.exhaustive);
    CHECK(r3.orthogonality_pairs == 200);
    CHECK(r3.orthogonality_residual < 1e-11);
    CHECK(r3.completeness_residual < 1e-11);
}
