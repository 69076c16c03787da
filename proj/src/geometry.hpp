#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "errors.hpp"
#include "tolerances.hpp"

namespace spintomo {

/// Direction vector (x, y, z) of one projecting state; |e| = 1 for a pure
/// state, |e| < 1 for a mixed one.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm2() const noexcept { return x * x + y * y + z * z; }
    double norm() const noexcept;

    BlochVector operator+(const BlochVector& o) const noexcept { return {x + o.x, y + o.y, z + o.z}; }
    BlochVector operator-(const BlochVector& o) const noexcept { return {x - o.x, y - o.y, z - o.z}; }
    BlochVector operator-() const noexcept { return {-x, -y, -z}; }
    BlochVector operator*(double s) const noexcept { return {s * x, s * y, s * z}; }
};

double dot(const BlochVector& a, const BlochVector& b) noexcept;
BlochVector cross(const BlochVector& a, const BlochVector& b) noexcept;

enum class PurityClass { AllPure, AllMixed, Heterogeneous };
enum class VectorClass { Pure, Mixed, TooLong };

/// Classification band: lengths within `len_tol` of 1 count as pure,
/// avoiding a knife edge exactly on the sphere.
VectorClass classify_vector(const BlochVector& e, double len_tol);

/// Closed quadruple of Bloch vectors: sum zero, every triple non-coplanar.
struct SchemeQuadruple {
    std::array<BlochVector, 4> e;
    PurityClass purity = PurityClass::Heterogeneous;
};

/// Delta_k = det of rows (e_{k+1}, e_{k+2}, e_{k+3}), indices cyclic mod 4.
/// Closure forces Delta_1 = -Delta_2 = Delta_3 = -Delta_4.
std::array<double, 4> coplanarity_determinants(const std::array<BlochVector, 4>& e);

struct ValidationReport {
    double closure_residual = 0.0;
    std::array<double, 4> lengths{};
    std::array<double, 4> deltas{};
    std::array<VectorClass, 4> classes{};
    double min_abs_delta = 0.0;
    double alternation_residual = 0.0; // max |Delta_k - (-1)^{k-1} Delta_1|
    bool closure_ok = false;
    bool lengths_ok = false;
    bool noncoplanar_ok = false;
    bool alternation_ok = false;
    bool pass = false;
    PurityClass purity = PurityClass::Heterogeneous;
};

/// Diagnostic only: failures land in the report, never as exceptions.
ValidationReport validate_quadruple(const std::array<BlochVector, 4>& e,
                                    const Tolerances& tols = {});

/// Validating constructor used by file loads and the CLI --vectors path.
SchemeQuadruple quadruple_from_vectors(const std::array<BlochVector, 4>& e,
                                       const Tolerances& tols = {});

/// e4 = -(e1+e2+e3). Throws CoplanarTriple / FourthVectorTooLong.
SchemeQuadruple quadruple_from_triple(const BlochVector& e1, const BlochVector& e2,
                                      const BlochVector& e3, const Tolerances& tols = {});

/// Planar polygon seed for the fold construction. Vertices are ordered by
/// bypass direction; edge k runs from vertex k to vertex k+1 (mod 4).
struct PlanarQuadrilateral {
    enum class FoldDiagonal { V0V2, V1V3 };
    std::array<std::array<double, 2>, 4> vertices{};
    FoldDiagonal fold_diagonal = FoldDiagonal::V0V2;
};

/// Bends the quadrilateral along its fold diagonal by `fold_angle` and
/// returns the four directed edges. The moving triangle is the one holding
/// the vertex off the diagonal with the lower index (v1 for V0V2, v2 for
/// V1V3); rotation follows the right-hand rule about the diagonal direction
/// (earlier vertex -> later vertex). Closure is exact by construction.
/// Throws DegenerateFold when the result stays (near-)coplanar.
SchemeQuadruple fold_quadrilateral(const PlanarQuadrilateral& q, double fold_angle,
                                   const Tolerances& tols = {});

/// Seeded rejection sampler over valid quadruples. Pure mode goes through a
/// random rhombus fold (all edges stay unit length); mixed mode samples
/// triples in a sub-unit ball; heterogeneous mixes one pure vector with two
/// mixed ones. Quadruples whose |Delta_1| falls below an internal floor are
/// rejected as numerically degenerate. Deterministic per seed.
SchemeQuadruple random_quadruple(std::uint64_t seed, PurityClass mode,
                                 const Tolerances& tols = {}, int max_attempts = 10000);

} // namespace spintomo
