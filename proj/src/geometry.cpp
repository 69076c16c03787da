#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace spintomo {

double BlochVector::norm() const noexcept { return std::sqrt(norm2()); }

double dot(const BlochVector& a, const BlochVector& b) noexcept {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

BlochVector cross(const BlochVector& a, const BlochVector& b) noexcept {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

VectorClass classify_vector(const BlochVector& e, double len_tol) {
    const double n = e.norm();
    if (n > 1.0 + len_tol) return VectorClass::TooLong;
    if (n >= 1.0 - len_tol) return VectorClass::Pure;
    return VectorClass::Mixed;
}

static double det3(const BlochVector& a, const BlochVector& b, const BlochVector& c) {
    return dot(a, cross(b, c));
}

std::array<double, 4> coplanarity_determinants(const std::array<BlochVector, 4>& e) {
    std::array<double, 4> d{};
    for (int k = 0; k < 4; ++k)
        d[k] = det3(e[(k + 1) % 4], e[(k + 2) % 4], e[(k + 3) % 4]);
    return d;
}

ValidationReport validate_quadruple(const std::array<BlochVector, 4>& e, const Tolerances& tols) {
    ValidationReport r;
    const BlochVector s = e[0] + e[1] + e[2] + e[3];
    r.closure_residual = s.norm();
    r.closure_ok = r.closure_residual <= tols.closure;

    r.lengths_ok = true;
    int n_pure = 0, n_mixed = 0;
    for (int k = 0; k < 4; ++k) {
        r.lengths[k] = e[k].norm();
        r.classes[k] = classify_vector(e[k], tols.length);
        if (r.classes[k] == VectorClass::TooLong) r.lengths_ok = false;
        if (r.classes[k] == VectorClass::Pure) ++n_pure;
        if (r.classes[k] == VectorClass::Mixed) ++n_mixed;
    }
    if (n_pure == 4)
        r.purity = PurityClass::AllPure;
    else if (n_mixed == 4)
        r.purity = PurityClass::AllMixed;
    else
        r.purity = PurityClass::Heterogeneous;

    r.deltas = coplanarity_determinants(e);
    r.min_abs_delta = std::abs(r.deltas[0]);
    r.alternation_residual = 0.0;
    for (int k = 0; k < 4; ++k) {
        r.min_abs_delta = std::min(r.min_abs_delta, std::abs(r.deltas[k]));
        const double expected = (k % 2 == 0) ? r.deltas[0] : -r.deltas[0];
        r.alternation_residual = std::max(r.alternation_residual, std::abs(r.deltas[k] - expected));
    }
    r.noncoplanar_ok = r.min_abs_delta >= tols.coplanar;
    r.alternation_ok = r.alternation_residual <= tols.coplanar;

    r.pass = r.closure_ok && r.lengths_ok && r.noncoplanar_ok && r.alternation_ok;
    return r;
}

SchemeQuadruple quadruple_from_vectors(const std::array<BlochVector, 4>& e, const Tolerances& tols) {
    const ValidationReport rep = validate_quadruple(e, tols);
    if (!rep.lengths_ok)
        raise(ErrorCode::LengthExceedsOne, "a direction vector is longer than 1");
    if (!rep.closure_ok)
        raise(ErrorCode::ValidationFailure, "direction vectors do not sum to zero (residual " +
                                                std::to_string(rep.closure_residual) + ")");
    if (!rep.noncoplanar_ok) {
        int worst = 0;
        for (int k = 1; k < 4; ++k)
            if (std::abs(rep.deltas[k]) < std::abs(rep.deltas[worst])) worst = k;
        raise(ErrorCode::CoplanarQuadruple,
              "coplanarity determinant Delta_" + std::to_string(worst + 1) + " = " +
                  std::to_string(rep.deltas[worst]) + " is below tolerance");
    }
    if (!rep.pass)
        raise(ErrorCode::ValidationFailure, "quadruple failed validation");
    return SchemeQuadruple{e, rep.purity};
}

SchemeQuadruple quadruple_from_triple(const BlochVector& e1, const BlochVector& e2,
                                      const BlochVector& e3, const Tolerances& tols) {
    for (const BlochVector* v : {&e1, &e2, &e3})
        if (classify_vector(*v, tols.length) == VectorClass::TooLong)
            raise(ErrorCode::LengthExceedsOne, "a direction vector is longer than 1");
    if (std::abs(det3(e1, e2, e3)) < tols.coplanar)
        raise(ErrorCode::CoplanarTriple, "the three vectors are coplanar; the closure vector "
                                         "cannot complete a valid quadruple");
    const BlochVector e4 = -(e1 + e2 + e3);
    if (classify_vector(e4, tols.length) == VectorClass::TooLong)
        raise(ErrorCode::FourthVectorTooLong, "the closure vector -(e1+e2+e3) is longer than 1");
    return quadruple_from_vectors({e1, e2, e3, e4}, tols);
}

/// Rodrigues rotation of v about unit axis u by angle t.
static BlochVector rotate_about(const BlochVector& v, const BlochVector& u, double t) {
    const double c = std::cos(t), s = std::sin(t);
    const BlochVector uxv = cross(u, v);
    const double ud = dot(u, v) * (1.0 - c);
    return {v.x * c + uxv.x * s + u.x * ud,
            v.y * c + uxv.y * s + u.y * ud,
            v.z * c + uxv.z * s + u.z * ud};
}

SchemeQuadruple fold_quadrilateral(const PlanarQuadrilateral& q, double fold_angle,
                                   const Tolerances& tols) {
    std::array<BlochVector, 4> v;
    for (int k = 0; k < 4; ++k) v[k] = {q.vertices[k][0], q.vertices[k][1], 0.0};

    const bool along02 = q.fold_diagonal == PlanarQuadrilateral::FoldDiagonal::V0V2;
    const int ia = along02 ? 0 : 1;
    const int ib = along02 ? 2 : 3;
    const int im = along02 ? 1 : 2; // vertex carried by the rotating triangle

    const BlochVector d = v[ib] - v[ia];
    const double dn = d.norm();
    if (dn < 1e-12)
        raise(ErrorCode::InvalidArgument, "fold diagonal has zero length");
    const BlochVector axis = d * (1.0 / dn);

    v[im] = v[ia] + rotate_about(v[im] - v[ia], axis, fold_angle);

    std::array<BlochVector, 4> e;
    for (int k = 0; k < 4; ++k) e[k] = v[(k + 1) % 4] - v[k];

    const ValidationReport rep = validate_quadruple(e, tols);
    if (!rep.lengths_ok)
        raise(ErrorCode::LengthExceedsOne, "an edge of the quadrilateral is longer than 1");
    if (!rep.noncoplanar_ok)
        raise(ErrorCode::DegenerateFold, "fold leaves the edge vectors (nearly) coplanar");
    if (!rep.pass)
        raise(ErrorCode::ValidationFailure, "folded quadruple failed validation");
    return SchemeQuadruple{e, rep.purity};
}

/// Uniform rotation via Shoemake's subgroup algorithm (random unit quaternion).
static std::array<BlochVector, 3> random_rotation(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u1 = unit(rng), u2 = unit(rng), u3 = unit(rng);
    const double two_pi = 2.0 * M_PI;
    const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
    const double qx = a * std::sin(two_pi * u2);
    const double qy = a * std::cos(two_pi * u2);
    const double qz = b * std::sin(two_pi * u3);
    const double qw = b * std::cos(two_pi * u3);
    // rotation matrix rows
    return {BlochVector{1 - 2 * (qy * qy + qz * qz), 2 * (qx * qy - qz * qw), 2 * (qx * qz + qy * qw)},
            BlochVector{2 * (qx * qy + qz * qw), 1 - 2 * (qx * qx + qz * qz), 2 * (qy * qz - qx * qw)},
            BlochVector{2 * (qx * qz - qy * qw), 2 * (qy * qz + qx * qw), 1 - 2 * (qx * qx + qy * qy)}};
}

static BlochVector apply_rows(const std::array<BlochVector, 3>& rows, const BlochVector& v) {
    return {dot(rows[0], v), dot(rows[1], v), dot(rows[2], v)};
}

static BlochVector sample_in_ball(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> coord(-radius, radius);
    for (;;) {
        const BlochVector v{coord(rng), coord(rng), coord(rng)};
        if (v.norm2() <= radius * radius) return v;
    }
}

static BlochVector sample_on_sphere(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;) {
        BlochVector v{gauss(rng), gauss(rng), gauss(rng)};
        const double n = v.norm();
        if (n > 1e-6) return v * (1.0 / n);
    }
}

// Quantizer entries scale like 1/Delta, so quadruples that barely clear the
// coplanarity tolerance lose most of their digits downstream. The sampler
// rejects those outright instead of handing out schemes that are valid but
// numerically useless.
constexpr double kDeltaFloor = 0.05;

SchemeQuadruple random_quadruple(std::uint64_t seed, PurityClass mode, const Tolerances& tols,
                                 int max_attempts) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        if (mode == PurityClass::AllPure) {
            // unit rhombus, bent along a diagonal, then randomly oriented;
            // apex and fold angles stay away from the flat limits
            const double alpha = 0.3 + (M_PI - 0.6) * unit(rng);
            double theta = 0.3 + (M_PI - 0.6) * unit(rng);
            if (unit(rng) < 0.5) theta = -theta;
            PlanarQuadrilateral q;
            q.vertices = {{{0.0, 0.0},
                           {1.0, 0.0},
                           {1.0 + std::cos(alpha), std::sin(alpha)},
                           {std::cos(alpha), std::sin(alpha)}}};
            q.fold_diagonal = PlanarQuadrilateral::FoldDiagonal::V0V2;
            SchemeQuadruple s;
            try {
                s = fold_quadrilateral(q, theta, tols);
            } catch (const Error&) {
                continue;
            }
            const auto rot = random_rotation(rng);
            for (auto& v : s.e) v = apply_rows(rot, v);
            const ValidationReport rep = validate_quadruple(s.e, tols);
            if (rep.pass && rep.min_abs_delta >= kDeltaFloor &&
                rep.purity == PurityClass::AllPure) {
                s.purity = PurityClass::AllPure;
                return s;
            }
            continue;
        }

        std::array<BlochVector, 4> e;
        if (mode == PurityClass::AllMixed) {
            e[0] = sample_in_ball(rng, 0.9);
            e[1] = sample_in_ball(rng, 0.9);
            e[2] = sample_in_ball(rng, 0.9);
        } else {
            e[0] = sample_on_sphere(rng);
            e[1] = sample_in_ball(rng, 0.9);
            e[2] = sample_in_ball(rng, 0.9);
        }
        e[3] = -(e[0] + e[1] + e[2]);
        const ValidationReport rep = validate_quadruple(e, tols);
        if (!rep.pass || rep.min_abs_delta < kDeltaFloor || rep.purity != mode) continue;
        return SchemeQuadruple{e, mode};
    }
    raise(ErrorCode::ExhaustedAttempts, "random quadruple sampling did not converge");
}

} // namespace spintomo
