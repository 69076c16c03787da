#include <doctest.h>

#include <cmath>
#include <optional>

#include "cmatrix.hpp"

using namespace spintomo;

namespace {

CMatrix m2(Complex a, Complex b, Complex c, Complex d) {
    CMatrix m(2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

template <typename F>
std::optional<ErrorCode> thrown_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

const Complex I(0.0, 1.0);

} // namespace

TEST_CASE("validating constructor") {
    CHECK(thrown_code([] { CMatrix(2, std::vector<Complex>(3)); }) ==
          ErrorCode::DimensionMismatch);
    std::vector<Complex> bad(4, Complex(0.0, 0.0));
    bad[2] = Complex(std::nan(""), 0.0);
    CHECK(thrown_code([&] { CMatrix(2, bad); }) == ErrorCode::InvalidArgument);
    const CMatrix ok(2, std::vector<Complex>{1.0, 2.0, 3.0, 4.0});
    CHECK(ok(1, 0) == Complex(3.0, 0.0));
}

TEST_CASE("identity, adjoint, trace") {
    const CMatrix e = CMatrix::identity(3);
    CHECK(e(0, 0) == Complex(1.0, 0.0));
    CHECK(e(0, 1) == Complex(0.0, 0.0));
    CHECK(e.trace() == Complex(3.0, 0.0));

    const CMatrix a = m2(1.0, 2.0 + I, 3.0, 4.0 * I);
    const CMatrix ad = a.adjoint();
    CHECK(ad(0, 1) == Complex(3.0, 0.0));
    CHECK(ad(1, 0) == Complex(2.0, -1.0));
    CHECK(ad(1, 1) == Complex(0.0, -4.0));
}

TEST_CASE("hermiticity defect") {
    CHECK(m2(1.0, I, -I, 2.0).hermiticity_defect() == 0.0);
    CHECK(m2(1.0, I, I, 2.0).hermiticity_defect() == doctest::Approx(2.0));
    CHECK(m2(1.0, I, -I, 2.0).is_hermitian(1e-12));
    CHECK_FALSE(m2(Complex(1.0, 1e-3), I, -I, 2.0).is_hermitian(1e-12));
}

TEST_CASE("arithmetic") {
    const CMatrix a = m2(1.0, 2.0, 3.0, 4.0);
    const CMatrix b = m2(0.0, 1.0, -1.0, 0.0);
    CHECK(max_abs_diff(a + b, m2(1.0, 3.0, 2.0, 4.0)) == 0.0);
    CHECK(max_abs_diff(a - b, m2(1.0, 1.0, 4.0, 4.0)) == 0.0);
    // a*b: [[1*0+2*(-1), 1],[ -4, 3]]
    CHECK(max_abs_diff(a * b, m2(-2.0, 1.0, -4.0, 3.0)) == 0.0);
    CHECK(max_abs_diff(2.0 * b, m2(0.0, 2.0, -2.0, 0.0)) == 0.0);
    CHECK(max_abs_diff(I * b, m2(0.0, I, -I, 0.0)) == 0.0);
    CHECK(thrown_code([&] { return a + CMatrix(3); }) == ErrorCode::DimensionMismatch);
    CHECK(frobenius_distance(a, a) == 0.0);
    CHECK(frobenius_distance(b, CMatrix(2)) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("trace product") {
    const CMatrix a = m2(1.0, 2.0 + I, 2.0 - I, 5.0);
    const CMatrix b = m2(-1.0, I, -I, 3.0);
    CHECK(std::abs(trace_product(a, b) - (a * b).trace()) < 1e-15);
    CHECK(std::abs(trace_product(a, b) - trace_product(b, a)) < 1e-15);
    CHECK(thrown_code([&] { trace_product(a, CMatrix(3)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("kronecker product") {
    const CMatrix sx = m2(0.0, 1.0, 1.0, 0.0);
    const CMatrix sz = m2(1.0, 0.0, 0.0, -1.0);
    const CMatrix k = kron(sx, sz);
    CHECK(k.dim() == 4);
    CHECK(k(0, 2) == Complex(1.0, 0.0));
    CHECK(k(1, 3) == Complex(-1.0, 0.0));
    CHECK(k(0, 0) == Complex(0.0, 0.0));
    CHECK(k(2, 0) == Complex(1.0, 0.0));
    const CMatrix a = m2(1.0, I, -I, 2.0);
    const CMatrix b = m2(3.0, 0.0, 0.0, 4.0);
    CHECK(std::abs(kron(a, b).trace() - a.trace() * b.trace()) < 1e-15);
}

TEST_CASE("2x2 eigenvalues") {
    const auto [l1, l2] = eig2_hermitian(m2(2.0, I, -I, 2.0));
    CHECK(l1 == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(l2 == doctest::Approx(1.0).epsilon(1e-14));
    const auto diag = eig2_hermitian(m2(-1.0, 0.0, 0.0, 5.0));
    CHECK(diag.first == doctest::Approx(5.0));
    CHECK(diag.second == doctest::Approx(-1.0));
    CHECK(thrown_code([] { eig2_hermitian(m2(1.0, 1.0, 2.0, 1.0)); }) == ErrorCode::NotHermitian);
    CHECK(thrown_code([] { eig2_hermitian(CMatrix(3)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("jacobi eigenvalues") {
    CMatrix t(3);
    t(0, 0) = t(1, 1) = t(2, 2) = 2.0;
    t(0, 1) = t(1, 0) = t(1, 2) = t(2, 1) = 1.0;
    const auto eig = eig_hermitian(t);
    const double r2 = std::sqrt(2.0);
    REQUIRE(eig.size() == 3);
    CHECK(eig[0] == doctest::Approx(2.0 + r2).epsilon(1e-12));
    CHECK(eig[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(eig[2] == doctest::Approx(2.0 - r2).epsilon(1e-12));

    const CMatrix h = m2(1.0, I, -I, 1.0);
    const auto e2 = eig_hermitian(h);
    CHECK(e2[0] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(e2[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));

    CHECK(thrown_code([] { eig_hermitian(CMatrix(65)); }) == ErrorCode::InvalidArgument);
    CHECK(thrown_code([] { eig_hermitian(m2(1.0, 1.0, 2.0, 1.0)); }) == ErrorCode::NotHermitian);
}

TEST_CASE("positive semidefinite test") {
    CHECK(is_psd(m2(1.0, 0.0, 0.0, 0.0), 1e-12));
    CHECK(is_psd(m2(0.5, 0.5, 0.5, 0.5), 1e-12));
    CHECK_FALSE(is_psd(m2(1.0, 0.0, 0.0, -0.1), 1e-12));
}

TEST_CASE("inverse") {
    const CMatrix a = m2(1.0, 2.0, 3.0, 4.0);
    const CMatrix ai = inverse(a);
    CHECK(max_abs_diff(ai, m2(-2.0, 1.0, 1.5, -0.5)) < 1e-14);
    const CMatrix b = m2(1.0 + I, 2.0, -I, 3.0);
    CHECK(max_abs_diff(b * inverse(b), CMatrix::identity(2)) < 1e-14);
    CHECK(thrown_code([] { inverse(m2(1.0, 2.0, 2.0, 4.0)); }) == ErrorCode::SingularMatrix);
}

TEST_CASE("determinant") {
    CHECK(std::abs(determinant(m2(1.0, I, I, 1.0)) - Complex(2.0, 0.0)) < 1e-14);
    CHECK(std::abs(determinant(m2(1.0, 2.0, 2.0, 4.0))) < 1e-14);
    CMatrix t(3);
    t(0, 0) = 2.0;
    t(0, 1) = 1.0;
    t(1, 0) = 1.0;
    t(1, 1) = 2.0;
    t(1, 2) = 1.0;
    t(2, 1) = 1.0;
    t(2, 2) = 2.0;
    CHECK(std::abs(determinant(t) - Complex(4.0, 0.0)) < 1e-13); // 2*(4-1)-1*2
}
