#include "io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace spintomo::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    raise(ErrorCode::ValidationFailure, path + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing");
    return *it;
}

std::string get_string(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

double num(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

void check_header(const json& j, const char* kind, const std::string& path) {
    const std::string version = get_string(j, "format_version", path);
    const std::string major = version.substr(0, version.find('.'));
    const std::string expected_major =
        std::string(kFormatVersion).substr(0, std::string(kFormatVersion).find('.'));
    if (major != expected_major)
        raise(ErrorCode::SchemaVersionMismatch,
              path + ".format_version: got " + version + ", this build reads " + expected_major +
                  ".x");
    const std::string k = get_string(j, "kind", path);
    if (k != kind) fail(path + ".kind", "expected \"" + std::string(kind) + "\", got \"" + k + "\"");
}

json matrix_to_json(const CMatrix& m) {
    json arr = json::array();
    const int dim = static_cast<int>(m.dim());
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            arr.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    return arr;
}

CMatrix matrix_from_json(const json& j, int dim, const std::string& path) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim * dim)
        fail(path, "expected " + std::to_string(dim * dim) + " [re, im] entries");
    CMatrix m(dim);
    for (int i = 0; i < dim * dim; ++i) {
        const json& e = j[i];
        const std::string ep = path + "[" + std::to_string(i) + "]";
        if (!e.is_array() || e.size() != 2) fail(ep, "expected an [re, im] pair");
        m(i / dim, i % dim) = Complex(num(e[0], ep), num(e[1], ep));
    }
    return m;
}

json tolerances_to_json(const Tolerances& t) {
    return json{{"hermitian", t.hermitian}, {"closure", t.closure},   {"coplanar", t.coplanar},
                {"length", t.length},       {"orthogonality", t.orthogonality},
                {"psd", t.psd},             {"pole", t.pole}};
}

Tolerances tolerances_from_json(const json& j, const std::string& path) {
    Tolerances t;
    if (j.is_null()) return t;
    if (!j.is_object()) fail(path, "expected an object");
    const auto opt = [&](const char* key, double& slot) {
        const auto it = j.find(key);
        if (it != j.end()) slot = num(*it, path + "." + key);
    };
    opt("hermitian", t.hermitian);
    opt("closure", t.closure);
    opt("coplanar", t.coplanar);
    opt("length", t.length);
    opt("orthogonality", t.orthogonality);
    opt("psd", t.psd);
    opt("pole", t.pole);
    return t;
}

json scheme_to_json_obj(const Spin12Scheme& s, bool include_matrices) {
    json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "scheme";
    j["label"] = s.label;
    json vecs = json::array();
    for (const BlochVector& e : s.quadruple.e) vecs.push_back(json::array({e.x, e.y, e.z}));
    j["vectors"] = vecs;
    j["tolerances"] = tolerances_to_json(s.tols);
    if (include_matrices) {
        json u = json::array(), d = json::array();
        for (int k = 0; k < 4; ++k) {
            u.push_back(matrix_to_json(s.U[k]));
            d.push_back(matrix_to_json(s.D[k]));
        }
        j["dequantizer"] = u;
        j["quantizer"] = d;
    }
    return j;
}

Spin12Scheme scheme_from_json_obj(const json& j, const std::string& path) {
    check_header(j, "scheme", path);
    const json& vecs = require(j, "vectors", path);
    if (!vecs.is_array() || vecs.size() != 4) fail(path + ".vectors", "expected 4 vectors");
    std::array<BlochVector, 4> e;
    for (int k = 0; k < 4; ++k) {
        const std::string vp = path + ".vectors[" + std::to_string(k) + "]";
        if (!vecs[k].is_array() || vecs[k].size() != 3) fail(vp, "expected 3 components");
        e[k] = {num(vecs[k][0], vp), num(vecs[k][1], vp), num(vecs[k][2], vp)};
    }
    const Tolerances tols =
        tolerances_from_json(j.contains("tolerances") ? j["tolerances"] : json(), path + ".tolerances");
    const std::string label = j.contains("label") ? get_string(j, "label", path) : "";

    const SchemeQuadruple q = quadruple_from_vectors(e, tols);
    Spin12Scheme s = build_scheme(q, tols, QuantizerMethod::Cramer, label);

    // precomputed matrices, when present, must agree with regeneration
    const auto check_block = [&](const char* key, const std::array<CMatrix, 4>& built) {
        if (!j.contains(key)) return;
        const json& block = j[key];
        if (!block.is_array() || block.size() != 4)
            fail(path + "." + key, "expected 4 matrices");
        for (int k = 0; k < 4; ++k) {
            const std::string mp = path + "." + key + "[" + std::to_string(k) + "]";
            const CMatrix m = matrix_from_json(block[k], 2, mp);
            if (max_abs_diff(m, built[k]) > tols.orthogonality)
                fail(mp, "does not match the matrix regenerated from the vectors");
        }
    };
    check_block("dequantizer", s.U);
    check_block("quantizer", s.D);
    return s;
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& ex) {
        raise(ErrorCode::ParseError, std::string("malformed JSON: ") + ex.what());
    }
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::IoError, "cannot open " + path + " for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) raise(ErrorCode::IoError, "read failure on " + path);
    return parse_text(buf.str());
}

void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) raise(ErrorCode::IoError, "cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
    if (!out) raise(ErrorCode::IoError, "write failure on " + path);
}

json state_to_json_obj(const DensityMatrix& rho) {
    json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "state";
    j["dim"] = rho.dim();
    j["matrix"] = matrix_to_json(rho.mat);
    return j;
}

DensityMatrix state_from_json_obj(const json& j, const std::string& path) {
    check_header(j, "state", path);
    const json& d = require(j, "dim", path);
    if (!d.is_number_integer() || d.get<int>() < 1 || d.get<int>() > 64)
        fail(path + ".dim", "expected an integer in 1..64");
    return DensityMatrix{matrix_from_json(require(j, "matrix", path), d.get<int>(), path + ".matrix")};
}

json tomogram_to_json_obj(const Tomogram& t) {
    json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "tomogram";
    j["scheme_label"] = t.scheme_label;
    j["w"] = t.w;
    return j;
}

Tomogram tomogram_from_json_obj(const json& j, const std::string& path) {
    check_header(j, "tomogram", path);
    const json& w = require(j, "w", path);
    if (!w.is_array() || w.empty()) fail(path + ".w", "expected a non-empty array");
    Tomogram t;
    for (std::size_t i = 0; i < w.size(); ++i)
        t.w.push_back(num(w[i], path + ".w[" + std::to_string(i) + "]"));
    if (j.contains("scheme_label")) t.scheme_label = get_string(j, "scheme_label", path);
    return t;
}

json counts_to_json_obj(const CountRecord& c) {
    json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "counts";
    j["shots"] = c.shots;
    j["seed"] = c.seed;
    j["successes"] = c.successes;
    j["scheme_label"] = c.scheme_label;
    return j;
}

CountRecord counts_from_json_obj(const json& j, const std::string& path) {
    check_header(j, "counts", path);
    CountRecord c;
    const json& shots = require(j, "shots", path);
    if (!shots.is_number_integer() || shots.get<long long>() < 1)
        fail(path + ".shots", "expected a positive integer");
    c.shots = shots.get<long long>();
    const json& seed = require(j, "seed", path);
    if (!seed.is_number_integer() && !seed.is_number_unsigned())
        fail(path + ".seed", "expected an integer");
    c.seed = seed.get<std::uint64_t>();
    const json& succ = require(j, "successes", path);
    if (!succ.is_array() || succ.empty()) fail(path + ".successes", "expected a non-empty array");
    for (std::size_t i = 0; i < succ.size(); ++i) {
        const std::string sp = path + ".successes[" + std::to_string(i) + "]";
        if (!succ[i].is_number_integer()) fail(sp, "expected an integer");
        const long long v = succ[i].get<long long>();
        if (v < 0 || v > c.shots) fail(sp, "outside 0..shots");
        c.successes.push_back(v);
    }
    if (j.contains("scheme_label")) c.scheme_label = get_string(j, "scheme_label", path);
    return c;
}

json tensor_to_json_obj(const TensorScheme& ts, bool include_matrices) {
    json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "tensor_scheme";
    j["label"] = ts.label;
    j["materialize_limit"] = ts.materialize_limit;
    json factors = json::array();
    for (const Spin12Scheme& f : ts.factors) factors.push_back(scheme_to_json_obj(f, include_matrices));
    j["factors"] = factors;
    return j;
}

TensorScheme tensor_from_json_obj(const json& j, const std::string& path) {
    check_header(j, "tensor_scheme", path);
    const json& factors = require(j, "factors", path);
    if (!factors.is_array() || factors.empty() || factors.size() > 6)
        fail(path + ".factors", "expected 1..6 factor schemes");
    std::vector<Spin12Scheme> fs;
    for (std::size_t i = 0; i < factors.size(); ++i)
        fs.push_back(scheme_from_json_obj(factors[i], path + ".factors[" + std::to_string(i) + "]"));
    int limit = 5;
    if (j.contains("materialize_limit")) {
        const json& ml = j["materialize_limit"];
        if (!ml.is_number_integer() || ml.get<int>() < 1)
            fail(path + ".materialize_limit", "expected a positive integer");
        limit = ml.get<int>();
    }
    const std::string label = j.contains("label") ? get_string(j, "label", path) : "";
    return build_tensor_scheme(std::move(fs), limit, label);
}

} // namespace

std::string scheme_to_json(const Spin12Scheme& s, bool include_matrices) {
    return scheme_to_json_obj(s, include_matrices).dump(2);
}
Spin12Scheme scheme_from_json(const std::string& text) {
    return scheme_from_json_obj(parse_text(text), "scheme");
}
std::string state_to_json(const DensityMatrix& rho) { return state_to_json_obj(rho).dump(2); }
DensityMatrix state_from_json(const std::string& text) {
    return state_from_json_obj(parse_text(text), "state");
}
std::string tomogram_to_json(const Tomogram& t) { return tomogram_to_json_obj(t).dump(2); }
Tomogram tomogram_from_json(const std::string& text) {
    return tomogram_from_json_obj(parse_text(text), "tomogram");
}
std::string counts_to_json(const CountRecord& c) { return counts_to_json_obj(c).dump(2); }
CountRecord counts_from_json(const std::string& text) {
    return counts_from_json_obj(parse_text(text), "counts");
}
std::string tensor_scheme_to_json(const TensorScheme& ts, bool include_matrices) {
    return tensor_to_json_obj(ts, include_matrices).dump(2);
}
TensorScheme tensor_scheme_from_json(const std::string& text) {
    return tensor_from_json_obj(parse_text(text), "tensor_scheme");
}

void save_scheme(const std::string& path, const Spin12Scheme& s, bool include_matrices) {
    write_file(path, scheme_to_json_obj(s, include_matrices));
}
Spin12Scheme load_scheme(const std::string& path) {
    return scheme_from_json_obj(read_file(path), path);
}
void save_state(const std::string& path, const DensityMatrix& rho) {
    write_file(path, state_to_json_obj(rho));
}
DensityMatrix load_state(const std::string& path) {
    return state_from_json_obj(read_file(path), path);
}
void save_tomogram(const std::string& path, const Tomogram& t) {
    write_file(path, tomogram_to_json_obj(t));
}
Tomogram load_tomogram(const std::string& path) {
    return tomogram_from_json_obj(read_file(path), path);
}
void save_counts(const std::string& path, const CountRecord& c) {
    write_file(path, counts_to_json_obj(c));
}
CountRecord load_counts(const std::string& path) {
    return counts_from_json_obj(read_file(path), path);
}
void save_tensor_scheme(const std::string& path, const TensorScheme& ts, bool include_matrices) {
    write_file(path, tensor_to_json_obj(ts, include_matrices));
}
TensorScheme load_tensor_scheme(const std::string& path) {
    return tensor_from_json_obj(read_file(path), path);
}

namespace {

const char* purity_name(PurityClass p) {
    switch (p) {
        case PurityClass::AllPure: return "all_pure";
        case PurityClass::AllMixed: return "all_mixed";
        default: return "heterogeneous";
    }
}

const char* class_name(VectorClass c) {
    switch (c) {
        case VectorClass::Pure: return "pure";
        case VectorClass::Mixed: return "mixed";
        default: return "too_long";
    }
}

} // namespace

std::string scheme_report_to_json(const Spin12Scheme& s) {
    const ValidationReport v = validate_quadruple(s.quadruple.e, s.tols);
    const SchemeDiagnostics d = scheme_diagnostics(s);

    json geo;
    geo["closure_residual"] = v.closure_residual;
    geo["lengths"] = v.lengths;
    geo["deltas"] = v.deltas;
    json classes = json::array();
    for (VectorClass c : v.classes) classes.push_back(class_name(c));
    geo["classes"] = classes;
    geo["purity_class"] = purity_name(v.purity);
    geo["min_abs_delta"] = v.min_abs_delta;
    geo["alternation_residual"] = v.alternation_residual;
    geo["closure_ok"] = v.closure_ok;
    geo["lengths_ok"] = v.lengths_ok;
    geo["noncoplanar_ok"] = v.noncoplanar_ok;
    geo["alternation_ok"] = v.alternation_ok;
    geo["pass"] = v.pass;

    json ids;
    json ue = json::array(), de = json::array();
    for (int k = 0; k < 4; ++k) {
        ue.push_back(json::array({d.u_eigenvalues[k].first, d.u_eigenvalues[k].second}));
        de.push_back(json::array({d.d_eigenvalues[k].first, d.d_eigenvalues[k].second}));
    }
    ids["u_eigenvalues"] = ue;
    ids["d_eigenvalues"] = de;
    ids["det_U"] = d.det_U;
    ids["det_D"] = d.det_D;
    ids["trace_UU"] = d.trace_UU;
    ids["trace_DD"] = d.trace_DD;
    ids["hermiticity_defect"] = d.hermiticity_defect;
    ids["orthogonality_residual"] = d.orthogonality_residual;
    ids["completeness_residual"] = d.completeness_residual;
    ids["sum_U_residual"] = d.sum_U_residual;
    ids["sum_D_residual"] = d.sum_D_residual;
    ids["trace_U_residual"] = d.trace_U_residual;
    ids["trace_D_residual"] = d.trace_D_residual;
    ids["trace_square_residual"] = d.trace_square_residual;
    ids["three_term_residual_U"] = d.three_term_residual_U;
    ids["three_term_residual_D"] = d.three_term_residual_D;
    ids["pairwise_residual_U"] = d.pairwise_residual_U;
    ids["pairwise_residual_D"] = d.pairwise_residual_D;
    ids["eig_closed_form_residual"] = d.eig_closed_form_residual;
    ids["cramer_vs_inverse"] = d.cramer_vs_inverse;
    ids["det_R"] = json::array({d.det_R.real(), d.det_R.imag()});
    ids["det_R_residual"] = d.det_R_residual;
    ids["max_det_D"] = d.max_det_D;
    ids["equal_lengths"] = d.equal_lengths;
    ids["quantizer_indefinite"] = d.quantizer_indefinite;
    ids["pass"] = d.pass;

    json j;
    j["kind"] = "scheme_report";
    j["label"] = s.label;
    j["geometry"] = geo;
    j["identities"] = ids;
    j["pass"] = v.pass && d.pass;
    return j.dump(2);
}

std::string physicality_to_json(const PhysicalityReport& r) {
    json j;
    j["kind"] = "physicality_report";
    j["diag_upper"] = r.diag_upper;
    j["diag_lower"] = r.diag_lower;
    j["det_value"] = r.det_value;
    j["normalization"] = r.normalization;
    j["diag_ok"] = r.diag_ok;
    j["one_zero_ok"] = r.one_zero_ok;
    j["det_ok"] = r.det_ok;
    j["norm_ok"] = r.norm_ok;
    j["pass"] = r.pass;
    return j.dump(2);
}

std::string tensor_report_to_json(const TensorIdentityReport& r) {
    json j;
    j["kind"] = "tensor_report";
    j["n"] = r.n;
    j["exhaustive"] = r.exhaustive;
    j["orthogonality_pairs"] = r.orthogonality_pairs;
    j["completeness_tuples"] = r.completeness_tuples;
    j["orthogonality_residual"] = r.orthogonality_residual;
    j["completeness_residual"] = r.completeness_residual;
    j["trace_U_residual"] = r.trace_U_residual;
    j["trace_D_residual"] = r.trace_D_residual;
    j["sum_U_residual"] = r.sum_U_residual;
    j["sum_D_residual"] = r.sum_D_residual;
    j["pass"] = r.pass;
    return j.dump(2);
}

std::string selftest_report_to_json(const SelftestReport& r) {
    json j;
    j["kind"] = "selftest_report";
    j["seed"] = r.seed;
    j["iterations"] = r.iterations;
    json suites = json::array();
    for (const SelftestEntry& e : r.entries) {
        json s;
        s["name"] = e.name;
        s["pass"] = e.pass;
        s["worst"] = e.worst;
        s["note"] = e.note;
        suites.push_back(s);
    }
    j["suites"] = suites;
    j["pass"] = r.pass;
    return j.dump(2);
}

std::string probe_kind(const std::string& path) {
    const json j = read_file(path);
    return get_string(j, "kind", path);
}

Spin12Scheme preset(const std::string& name) {
    if (name == "example1") {
        const std::array<BlochVector, 4> e{BlochVector{0.0, 4.0 / 5.0, 3.0 / 5.0},
                                           BlochVector{4.0 / 5.0, 0.0, -3.0 / 5.0},
                                           BlochVector{0.0, -4.0 / 5.0, 3.0 / 5.0},
                                           BlochVector{-4.0 / 5.0, 0.0, -3.0 / 5.0}};
        return build_scheme(quadruple_from_vectors(e), {}, QuantizerMethod::Cramer, "example1");
    }
    if (name == "example2") {
        const std::array<BlochVector, 4> e{BlochVector{0.0, -2.0 / 3.0, 1.0 / 3.0},
                                           BlochVector{2.0 / 3.0, 0.0, -1.0 / 3.0},
                                           BlochVector{0.0, 2.0 / 3.0, 1.0 / 3.0},
                                           BlochVector{-2.0 / 3.0, 0.0, -1.0 / 3.0}};
        return build_scheme(quadruple_from_vectors(e), {}, QuantizerMethod::Cramer, "example2");
    }
    raise(ErrorCode::UnknownPreset, "unknown preset \"" + name + "\"; available: example1, example2");
}

} // namespace spintomo::io
