#include <spintomo/spintomo.h>

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "io.hpp"

struct spintomo_scheme {
    spintomo::Spin12Scheme impl;
};

struct spintomo_tensor {
    spintomo::TensorScheme impl;
};

namespace {

using spintomo::CMatrix;
using spintomo::Complex;
using spintomo::Error;
using spintomo::ErrorCode;

// The status enum mirrors ErrorCode verbatim; keep the contract checked.
static_assert(static_cast<int>(ErrorCode::InvalidArgument) == SPINTOMO_ERR_INVALID_ARGUMENT);
static_assert(static_cast<int>(ErrorCode::DimensionMismatch) == SPINTOMO_ERR_DIMENSION_MISMATCH);
static_assert(static_cast<int>(ErrorCode::NotHermitian) == SPINTOMO_ERR_NOT_HERMITIAN);
static_assert(static_cast<int>(ErrorCode::EigNoConvergence) == SPINTOMO_ERR_EIG_NO_CONVERGENCE);
static_assert(static_cast<int>(ErrorCode::CoplanarTriple) == SPINTOMO_ERR_COPLANAR_TRIPLE);
static_assert(static_cast<int>(ErrorCode::CoplanarQuadruple) == SPINTOMO_ERR_COPLANAR_QUADRUPLE);
static_assert(static_cast<int>(ErrorCode::FourthVectorTooLong) ==
              SPINTOMO_ERR_FOURTH_VECTOR_TOO_LONG);
static_assert(static_cast<int>(ErrorCode::DegenerateFold) == SPINTOMO_ERR_DEGENERATE_FOLD);
static_assert(static_cast<int>(ErrorCode::ExhaustedAttempts) == SPINTOMO_ERR_EXHAUSTED_ATTEMPTS);
static_assert(static_cast<int>(ErrorCode::NotPure) == SPINTOMO_ERR_NOT_PURE);
static_assert(static_cast<int>(ErrorCode::LengthExceedsOne) == SPINTOMO_ERR_LENGTH_EXCEEDS_ONE);
static_assert(static_cast<int>(ErrorCode::SingularMatrix) == SPINTOMO_ERR_SINGULAR_MATRIX);
static_assert(static_cast<int>(ErrorCode::SingularTransferMatrix) ==
              SPINTOMO_ERR_SINGULAR_TRANSFER_MATRIX);
static_assert(static_cast<int>(ErrorCode::NonPhysicalState) == SPINTOMO_ERR_NON_PHYSICAL_STATE);
static_assert(static_cast<int>(ErrorCode::MaterializeLimitExceeded) ==
              SPINTOMO_ERR_MATERIALIZE_LIMIT);
static_assert(static_cast<int>(ErrorCode::UnknownPreset) == SPINTOMO_ERR_UNKNOWN_PRESET);
static_assert(static_cast<int>(ErrorCode::SchemaVersionMismatch) == SPINTOMO_ERR_SCHEMA_VERSION);
static_assert(static_cast<int>(ErrorCode::ValidationFailure) == SPINTOMO_ERR_VALIDATION);
static_assert(static_cast<int>(ErrorCode::ParseError) == SPINTOMO_ERR_PARSE);
static_assert(static_cast<int>(ErrorCode::IoError) == SPINTOMO_ERR_IO);

thread_local std::string g_last_error;

template <typename F>
spintomo_status wrap(F&& body) {
    try {
        body();
        g_last_error.clear();
        return SPINTOMO_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return static_cast<spintomo_status>(static_cast<int>(e.code()));
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SPINTOMO_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return SPINTOMO_ERR_INTERNAL;
    }
}

void need(const void* p, const char* name) {
    if (p == nullptr) spintomo::raise(ErrorCode::InvalidArgument, std::string(name) + " is NULL");
}

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p == nullptr) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

// interleaved re,im row-major <-> CMatrix; the validating constructor
// rejects non-finite caller input
CMatrix matrix_in(const double* p, int dim) {
    std::vector<Complex> entries(static_cast<std::size_t>(dim) * dim);
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i] = Complex(p[2 * i], p[2 * i + 1]);
    return CMatrix(dim, std::move(entries));
}

void matrix_out(const CMatrix& m, double* p) {
    const std::size_t count = m.dim() * m.dim();
    for (std::size_t i = 0; i < count; ++i) {
        p[2 * i] = m.entries()[i].real();
        p[2 * i + 1] = m.entries()[i].imag();
    }
}

std::array<spintomo::BlochVector, 4> vectors_in(const double* p) {
    std::array<spintomo::BlochVector, 4> e;
    for (int k = 0; k < 4; ++k) e[k] = {p[3 * k], p[3 * k + 1], p[3 * k + 2]};
    return e;
}

spintomo_scheme* make_scheme(spintomo::Spin12Scheme s) {
    return new spintomo_scheme{std::move(s)};
}

const spintomo::Spin12Scheme& scheme_of(const spintomo_scheme* s) {
    need(s, "scheme");
    return s->impl;
}

const spintomo::TensorScheme& tensor_of(const spintomo_tensor* t) {
    need(t, "tensor scheme");
    return t->impl;
}

spintomo::PurityClass mode_from_string(const char* mode) {
    const std::string m = mode;
    if (m == "pure") return spintomo::PurityClass::AllPure;
    if (m == "mixed") return spintomo::PurityClass::AllMixed;
    if (m == "heterogeneous") return spintomo::PurityClass::Heterogeneous;
    spintomo::raise(ErrorCode::InvalidArgument,
                    "unknown mode \"" + m + "\"; expected pure, mixed or heterogeneous");
}

const CMatrix& component_of(const spintomo::Spin12Scheme& s, int k, spintomo_component_kind kind) {
    if (k < 1 || k > 4)
        spintomo::raise(ErrorCode::InvalidArgument, "component index must be in 1..4");
    if (kind != SPINTOMO_DEQUANTIZER && kind != SPINTOMO_QUANTIZER)
        spintomo::raise(ErrorCode::InvalidArgument, "unknown component kind");
    return kind == SPINTOMO_DEQUANTIZER ? s.U[k - 1] : s.D[k - 1];
}

} // namespace

extern "C" {

const char* spintomo_version(void) { return "1.0.0"; }

const char* spintomo_last_error(void) { return g_last_error.c_str(); }

void spintomo_string_free(char* s) { std::free(s); }

spintomo_status spintomo_scheme_from_vectors(const double* vectors, spintomo_scheme** out) {
    return wrap([&] {
        need(vectors, "vectors");
        need(out, "out");
        *out = make_scheme(spintomo::build_scheme(spintomo::quadruple_from_vectors(vectors_in(vectors))));
    });
}

spintomo_status spintomo_scheme_from_triple(const double* vectors, spintomo_scheme** out) {
    return wrap([&] {
        need(vectors, "vectors");
        need(out, "out");
        const spintomo::SchemeQuadruple q = spintomo::quadruple_from_triple(
            {vectors[0], vectors[1], vectors[2]}, {vectors[3], vectors[4], vectors[5]},
            {vectors[6], vectors[7], vectors[8]});
        *out = make_scheme(spintomo::build_scheme(q));
    });
}

spintomo_status spintomo_scheme_preset(const char* name, spintomo_scheme** out) {
    return wrap([&] {
        need(name, "name");
        need(out, "out");
        *out = make_scheme(spintomo::io::preset(name));
    });
}

spintomo_status spintomo_scheme_random(uint64_t seed, const char* mode, spintomo_scheme** out) {
    return wrap([&] {
        need(mode, "mode");
        need(out, "out");
        *out = make_scheme(
            spintomo::build_scheme(spintomo::random_quadruple(seed, mode_from_string(mode))));
    });
}

spintomo_status spintomo_scheme_fold(const double* vertices, int diagonal, double fold_angle,
                                     spintomo_scheme** out) {
    return wrap([&] {
        need(vertices, "vertices");
        need(out, "out");
        if (diagonal != 0 && diagonal != 1)
            spintomo::raise(ErrorCode::InvalidArgument, "diagonal must be 0 (V0V2) or 1 (V1V3)");
        spintomo::PlanarQuadrilateral q;
        for (int v = 0; v < 4; ++v) q.vertices[v] = {vertices[2 * v], vertices[2 * v + 1]};
        q.fold_diagonal = diagonal == 0 ? spintomo::PlanarQuadrilateral::FoldDiagonal::V0V2
                                        : spintomo::PlanarQuadrilateral::FoldDiagonal::V1V3;
        *out = make_scheme(spintomo::build_scheme(spintomo::fold_quadrilateral(q, fold_angle)));
    });
}

spintomo_status spintomo_scheme_load(const char* path, spintomo_scheme** out) {
    return wrap([&] {
        need(path, "path");
        need(out, "out");
        *out = make_scheme(spintomo::io::load_scheme(path));
    });
}

spintomo_status spintomo_scheme_save(const spintomo_scheme* s, const char* path,
                                     int include_matrices) {
    return wrap([&] {
        need(path, "path");
        spintomo::io::save_scheme(path, scheme_of(s), include_matrices != 0);
    });
}

spintomo_status spintomo_scheme_from_json(const char* text, spintomo_scheme** out) {
    return wrap([&] {
        need(text, "text");
        need(out, "out");
        *out = make_scheme(spintomo::io::scheme_from_json(text));
    });
}

spintomo_status spintomo_scheme_to_json(const spintomo_scheme* s, int include_matrices,
                                        char** out_json) {
    return wrap([&] {
        need(out_json, "out_json");
        *out_json = dup_string(spintomo::io::scheme_to_json(scheme_of(s), include_matrices != 0));
    });
}

spintomo_status spintomo_scheme_set_label(spintomo_scheme* s, const char* label) {
    return wrap([&] {
        need(s, "scheme");
        need(label, "label");
        s->impl.label = label;
    });
}

void spintomo_scheme_free(spintomo_scheme* s) { delete s; }

spintomo_status spintomo_scheme_label(const spintomo_scheme* s, char** out_label) {
    return wrap([&] {
        need(out_label, "out_label");
        *out_label = dup_string(scheme_of(s).label);
    });
}

spintomo_status spintomo_scheme_vectors(const spintomo_scheme* s, double* out_vectors) {
    return wrap([&] {
        need(out_vectors, "out_vectors");
        const auto& e = scheme_of(s).quadruple.e;
        for (int k = 0; k < 4; ++k) {
            out_vectors[3 * k] = e[k].x;
            out_vectors[3 * k + 1] = e[k].y;
            out_vectors[3 * k + 2] = e[k].z;
        }
    });
}

spintomo_status spintomo_scheme_component(const spintomo_scheme* s, int k,
                                          spintomo_component_kind kind, double* out_matrix) {
    return wrap([&] {
        need(out_matrix, "out_matrix");
        matrix_out(component_of(scheme_of(s), k, kind), out_matrix);
    });
}

spintomo_status spintomo_scheme_report_json(const spintomo_scheme* s, char** out_json) {
    return wrap([&] {
        need(out_json, "out_json");
        *out_json = dup_string(spintomo::io::scheme_report_to_json(scheme_of(s)));
    });
}

spintomo_status spintomo_forward(const spintomo_scheme* s, const double* rho, double* out_w) {
    return wrap([&] {
        need(rho, "rho");
        need(out_w, "out_w");
        const spintomo::Tomogram t =
            spintomo::forward(spintomo::DensityMatrix{matrix_in(rho, 2)}, scheme_of(s));
        for (int j = 0; j < 4; ++j) out_w[j] = t.w[j];
    });
}

spintomo_status spintomo_inverse(const spintomo_scheme* s, const double* w, double* out_rho) {
    return wrap([&] {
        need(w, "w");
        need(out_rho, "out_rho");
        matrix_out(spintomo::inverse(std::vector<double>(w, w + 4), scheme_of(s)).mat, out_rho);
    });
}

spintomo_status spintomo_is_physical(const spintomo_scheme* s, const double* w, double tol,
                                     int* out_pass, char** out_json) {
    return wrap([&] {
        need(w, "w");
        need(out_pass, "out_pass");
        const spintomo::PhysicalityReport rep = spintomo::is_physical(
            std::vector<double>(w, w + 4), scheme_of(s), tol < 0.0 ? 1e-10 : tol);
        *out_pass = rep.pass ? 1 : 0;
        if (out_json != nullptr) *out_json = dup_string(spintomo::io::physicality_to_json(rep));
    });
}

spintomo_status spintomo_purity(const double* rho, int dim, double* out_purity) {
    return wrap([&] {
        need(rho, "rho");
        need(out_purity, "out_purity");
        if (dim < 1 || dim > 64)
            spintomo::raise(ErrorCode::InvalidArgument, "dim must be in 1..64");
        *out_purity = spintomo::purity(spintomo::DensityMatrix{matrix_in(rho, dim)});
    });
}

spintomo_status spintomo_eig_hermitian(const double* matrix, int dim, double* out_eigs) {
    return wrap([&] {
        need(matrix, "matrix");
        need(out_eigs, "out_eigs");
        if (dim < 1 || dim > 64)
            spintomo::raise(ErrorCode::InvalidArgument, "dim must be in 1..64");
        const std::vector<double> eigs = spintomo::eig_hermitian(matrix_in(matrix, dim));
        for (int i = 0; i < dim; ++i) out_eigs[i] = eigs[i];
    });
}

spintomo_status spintomo_simulate(const spintomo_scheme* s, const double* rho, long long shots,
                                  uint64_t seed, long long* out_counts) {
    return wrap([&] {
        need(rho, "rho");
        need(out_counts, "out_counts");
        const spintomo::CountRecord c = spintomo::simulate_counts(
            spintomo::DensityMatrix{matrix_in(rho, 2)}, scheme_of(s), shots, seed);
        for (int j = 0; j < 4; ++j) out_counts[j] = c.successes[j];
    });
}

spintomo_status spintomo_estimate(const spintomo_scheme* s, const long long* counts,
                                  long long shots, const double* truth_rho, double* out_rho,
                                  double* out_w_hat, double* out_metrics) {
    return wrap([&] {
        need(counts, "counts");
        spintomo::CountRecord record;
        record.shots = shots;
        record.successes.assign(counts, counts + 4);
        record.scheme_label = scheme_of(s).label;
        std::optional<spintomo::DensityMatrix> truth;
        if (truth_rho != nullptr) truth = spintomo::DensityMatrix{matrix_in(truth_rho, 2)};
        const spintomo::Estimate est = spintomo::estimate_state(record, scheme_of(s), truth);
        if (out_rho != nullptr) matrix_out(est.rho.mat, out_rho);
        if (out_w_hat != nullptr)
            for (int j = 0; j < 4; ++j) out_w_hat[j] = est.w_hat[j];
        if (out_metrics != nullptr) {
            out_metrics[0] = est.metrics.frobenius_error;
            out_metrics[1] = est.metrics.min_eigenvalue;
            out_metrics[2] = est.metrics.trace;
        }
    });
}

uint64_t spintomo_trial_seed(uint64_t seed, uint64_t index) {
    return spintomo::derive_trial_seed(seed, index);
}

spintomo_status spintomo_tensor_new(const spintomo_scheme* const* factors, int n,
                                    int materialize_limit, const char* label,
                                    spintomo_tensor** out) {
    return wrap([&] {
        need(factors, "factors");
        need(out, "out");
        if (n < 1) spintomo::raise(ErrorCode::InvalidArgument, "factor count must be positive");
        std::vector<spintomo::Spin12Scheme> fs;
        for (int i = 0; i < n; ++i) fs.push_back(scheme_of(factors[i]));
        *out = new spintomo_tensor{spintomo::build_tensor_scheme(
            std::move(fs), materialize_limit <= 0 ? 5 : materialize_limit,
            label == nullptr ? "" : label)};
    });
}

spintomo_status spintomo_tensor_load(const char* path, spintomo_tensor** out) {
    return wrap([&] {
        need(path, "path");
        need(out, "out");
        *out = new spintomo_tensor{spintomo::io::load_tensor_scheme(path)};
    });
}

spintomo_status spintomo_tensor_save(const spintomo_tensor* t, const char* path,
                                     int include_matrices) {
    return wrap([&] {
        need(path, "path");
        spintomo::io::save_tensor_scheme(path, tensor_of(t), include_matrices != 0);
    });
}

void spintomo_tensor_free(spintomo_tensor* t) { delete t; }

int spintomo_tensor_n(const spintomo_tensor* t) { return t == nullptr ? 0 : t->impl.n(); }

spintomo_status spintomo_tensor_component(const spintomo_tensor* t, int j,
                                          spintomo_component_kind kind, double* out_matrix) {
    return wrap([&] {
        need(out_matrix, "out_matrix");
        if (kind != SPINTOMO_DEQUANTIZER && kind != SPINTOMO_QUANTIZER)
            spintomo::raise(ErrorCode::InvalidArgument, "unknown component kind");
        matrix_out(spintomo::tensor_component(tensor_of(t), j,
                                              kind == SPINTOMO_DEQUANTIZER
                                                  ? spintomo::ComponentKind::Dequantizer
                                                  : spintomo::ComponentKind::Quantizer),
                   out_matrix);
    });
}

spintomo_status spintomo_tensor_forward(const spintomo_tensor* t, const double* rho,
                                        double* out_w) {
    return wrap([&] {
        need(rho, "rho");
        need(out_w, "out_w");
        const spintomo::TensorScheme& ts = tensor_of(t);
        const spintomo::Tomogram w =
            spintomo::forward_n(spintomo::DensityMatrix{matrix_in(rho, ts.dim())}, ts);
        for (std::size_t j = 0; j < w.w.size(); ++j) out_w[j] = w.w[j];
    });
}

spintomo_status spintomo_tensor_inverse(const spintomo_tensor* t, const double* w,
                                        double* out_rho) {
    return wrap([&] {
        need(w, "w");
        need(out_rho, "out_rho");
        const spintomo::TensorScheme& ts = tensor_of(t);
        matrix_out(
            spintomo::inverse_n(std::vector<double>(w, w + ts.component_count()), ts).mat,
            out_rho);
    });
}

spintomo_status spintomo_tensor_verify_json(const spintomo_tensor* t, int exhaustive,
                                            uint64_t seed, int samples, char** out_json) {
    return wrap([&] {
        need(out_json, "out_json");
        const spintomo::TensorIdentityReport rep = spintomo::verify_tensor_identities(
            tensor_of(t),
            exhaustive != 0 ? spintomo::VerifyMode::Exhaustive : spintomo::VerifyMode::Sampled,
            seed, samples <= 0 ? 1000 : samples);
        *out_json = dup_string(spintomo::io::tensor_report_to_json(rep));
    });
}

spintomo_status spintomo_g_map(int k, int n, int* out_digits) {
    return wrap([&] {
        need(out_digits, "out_digits");
        const std::vector<int> ks = spintomo::g_map(k, n);
        for (int i = 0; i < n; ++i) out_digits[i] = ks[i];
    });
}

spintomo_status spintomo_g_inverse(const int* digits, int n, int* out_k) {
    return wrap([&] {
        need(digits, "digits");
        need(out_k, "out_k");
        *out_k = spintomo::g_inverse(std::vector<int>(digits, digits + (n < 0 ? 0 : n)));
    });
}

spintomo_status spintomo_f_map(const int* digits, int n, int* out_j) {
    return wrap([&] {
        need(digits, "digits");
        need(out_j, "out_j");
        *out_j = spintomo::f_map(std::vector<int>(digits, digits + (n < 0 ? 0 : n)));
    });
}

spintomo_status spintomo_f_inverse(int j, int n, int* out_digits) {
    return wrap([&] {
        need(out_digits, "out_digits");
        const std::vector<int> js = spintomo::f_inverse(j, n);
        for (int i = 0; i < n; ++i) out_digits[i] = js[i];
    });
}

spintomo_status spintomo_state_load(const char* path, double* out_rho, int capacity_dim,
                                    int* out_dim) {
    return wrap([&] {
        need(path, "path");
        need(out_rho, "out_rho");
        need(out_dim, "out_dim");
        const spintomo::DensityMatrix rho = spintomo::io::load_state(path);
        if (rho.dim() > capacity_dim)
            spintomo::raise(ErrorCode::DimensionMismatch,
                            "state dimension " + std::to_string(rho.dim()) +
                                " exceeds caller capacity " + std::to_string(capacity_dim));
        matrix_out(rho.mat, out_rho);
        *out_dim = rho.dim();
    });
}

spintomo_status spintomo_state_save(const char* path, const double* rho, int dim) {
    return wrap([&] {
        need(path, "path");
        need(rho, "rho");
        if (dim < 1 || dim > 64)
            spintomo::raise(ErrorCode::InvalidArgument, "dim must be in 1..64");
        spintomo::io::save_state(path, spintomo::DensityMatrix{matrix_in(rho, dim)});
    });
}

spintomo_status spintomo_tomogram_load(const char* path, double* out_w, int capacity,
                                       int* out_count, char** out_label) {
    return wrap([&] {
        need(path, "path");
        need(out_w, "out_w");
        need(out_count, "out_count");
        const spintomo::Tomogram t = spintomo::io::load_tomogram(path);
        if (static_cast<int>(t.w.size()) > capacity)
            spintomo::raise(ErrorCode::DimensionMismatch,
                            "tomogram has " + std::to_string(t.w.size()) +
                                " components, caller capacity is " + std::to_string(capacity));
        for (std::size_t j = 0; j < t.w.size(); ++j) out_w[j] = t.w[j];
        *out_count = static_cast<int>(t.w.size());
        if (out_label != nullptr) *out_label = dup_string(t.scheme_label);
    });
}

spintomo_status spintomo_tomogram_save(const char* path, const double* w, int count,
                                       const char* label) {
    return wrap([&] {
        need(path, "path");
        need(w, "w");
        if (count < 1) spintomo::raise(ErrorCode::InvalidArgument, "count must be positive");
        spintomo::Tomogram t;
        t.w.assign(w, w + count);
        t.scheme_label = label == nullptr ? "" : label;
        spintomo::io::save_tomogram(path, t);
    });
}

spintomo_status spintomo_counts_load(const char* path, long long* out_successes, int capacity,
                                     int* out_count, long long* out_shots, uint64_t* out_seed,
                                     char** out_label) {
    return wrap([&] {
        need(path, "path");
        need(out_successes, "out_successes");
        need(out_count, "out_count");
        const spintomo::CountRecord c = spintomo::io::load_counts(path);
        if (static_cast<int>(c.successes.size()) > capacity)
            spintomo::raise(ErrorCode::DimensionMismatch,
                            "count record has " + std::to_string(c.successes.size()) +
                                " components, caller capacity is " + std::to_string(capacity));
        for (std::size_t j = 0; j < c.successes.size(); ++j) out_successes[j] = c.successes[j];
        *out_count = static_cast<int>(c.successes.size());
        if (out_shots != nullptr) *out_shots = c.shots;
        if (out_seed != nullptr) *out_seed = c.seed;
        if (out_label != nullptr) *out_label = dup_string(c.scheme_label);
    });
}

spintomo_status spintomo_counts_save(const char* path, const long long* successes, int count,
                                     long long shots, uint64_t seed, const char* label) {
    return wrap([&] {
        need(path, "path");
        need(successes, "successes");
        if (count < 1) spintomo::raise(ErrorCode::InvalidArgument, "count must be positive");
        spintomo::CountRecord c;
        c.successes.assign(successes, successes + count);
        c.shots = shots;
        c.seed = seed;
        c.scheme_label = label == nullptr ? "" : label;
        spintomo::io::save_counts(path, c);
    });
}

spintomo_status spintomo_file_kind(const char* path, char** out_kind) {
    return wrap([&] {
        need(path, "path");
        need(out_kind, "out_kind");
        *out_kind = dup_string(spintomo::io::probe_kind(path));
    });
}

spintomo_status spintomo_selftest_json(uint64_t seed, int iterations, char** out_json) {
    return wrap([&] {
        need(out_json, "out_json");
        const spintomo::SelftestReport rep =
            spintomo::run_selftest(seed, iterations <= 0 ? 200 : iterations);
        *out_json = dup_string(spintomo::io::selftest_report_to_json(rep));
    });
}

} // extern "C"
