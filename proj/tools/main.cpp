// spintomo command-line front end. All domain work goes through the C API in
// spintomo/spintomo.h; this file only parses flags, moves JSON text around
// and formats output.
//
// Exit codes: 0 success, 1 validation/physicality failure, 2 usage error,
// 3 I/O or parse error.

#include <spintomo/spintomo.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using nlohmann::json;

int exit_code_for(spintomo_status st) {
    switch (st) {
        case SPINTOMO_OK:
            return 0;
        case SPINTOMO_ERR_PARSE:
        case SPINTOMO_ERR_IO:
            return 3;
        case SPINTOMO_ERR_INVALID_ARGUMENT:
        case SPINTOMO_ERR_DIMENSION_MISMATCH:
        case SPINTOMO_ERR_UNKNOWN_PRESET:
            return 2;
        default:
            return 1;
    }
}

int die(spintomo_status st) {
    std::cerr << "error: " << spintomo_last_error() << "\n";
    return exit_code_for(st);
}

int die_usage(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return 2;
}

#define ST_CHECK(call)                                        \
    do {                                                      \
        const spintomo_status st_ = (call);                   \
        if (st_ != SPINTOMO_OK) return die(st_);              \
    } while (0)

struct SchemeHandle {
    spintomo_scheme* p = nullptr;
    ~SchemeHandle() { spintomo_scheme_free(p); }
    SchemeHandle() = default;
    SchemeHandle(const SchemeHandle&) = delete;
    SchemeHandle& operator=(const SchemeHandle&) = delete;
};

struct TensorHandle {
    spintomo_tensor* p = nullptr;
    ~TensorHandle() { spintomo_tensor_free(p); }
    TensorHandle() = default;
    TensorHandle(const TensorHandle&) = delete;
    TensorHandle& operator=(const TensorHandle&) = delete;
};

struct CString {
    char* p = nullptr;
    ~CString() { spintomo_string_free(p); }
    std::string str() const { return p == nullptr ? std::string() : std::string(p); }
};

std::string fmt_residual(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << v;
    return os.str();
}

std::string fmt_value(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

json parse_report(const std::string& text) {
    // reports come from the library, so this never fails in practice
    return json::parse(text);
}

void print_scheme_summary(const json& rep) {
    const json& geo = rep.at("geometry");
    const json& ids = rep.at("identities");
    std::cout << "label:                  " << rep.at("label").get<std::string>() << "\n";
    std::cout << "purity class:           " << geo.at("purity_class").get<std::string>() << "\n";
    std::cout << "vector lengths:        ";
    for (const auto& v : geo.at("lengths")) std::cout << " " << fmt_value(v.get<double>());
    std::cout << "\n";
    std::cout << "deltas:                ";
    for (const auto& v : geo.at("deltas")) std::cout << " " << fmt_value(v.get<double>());
    std::cout << "\n";
    std::cout << "closure residual:       " << fmt_residual(geo.at("closure_residual").get<double>())
              << "\n";
    std::cout << "orthogonality residual: "
              << fmt_residual(ids.at("orthogonality_residual").get<double>()) << "\n";
    std::cout << "completeness residual:  "
              << fmt_residual(ids.at("completeness_residual").get<double>()) << "\n";
    std::cout << "cramer vs inverse:      " << fmt_residual(ids.at("cramer_vs_inverse").get<double>())
              << "\n";
    std::cout << "quantizer indefinite:   "
              << (ids.at("quantizer_indefinite").get<bool>() ? "yes" : "no") << "\n";
    std::cout << "pass:                   " << (rep.at("pass").get<bool>() ? "yes" : "no") << "\n";
}

// ---- scheme new -----------------------------------------------------------

struct SchemeNewOpts {
    std::string preset;
    std::string vectors_file;
    std::uint64_t seed = 0;
    bool have_preset = false, have_vectors = false, have_random = false;
    std::string mode = "pure";
    std::string label;
    std::string out;
};

int cmd_scheme_new(const SchemeNewOpts& o) {
    const int sources = (o.have_preset ? 1 : 0) + (o.have_vectors ? 1 : 0) + (o.have_random ? 1 : 0);
    if (sources != 1)
        return die_usage("exactly one of --preset, --vectors, --random is required");

    SchemeHandle s;
    if (o.have_preset) {
        ST_CHECK(spintomo_scheme_preset(o.preset.c_str(), &s.p));
    } else if (o.have_random) {
        ST_CHECK(spintomo_scheme_random(o.seed, o.mode.c_str(), &s.p));
    } else {
        std::ifstream in(o.vectors_file);
        if (!in) {
            std::cerr << "error: cannot open " << o.vectors_file << "\n";
            return 3;
        }
        json j;
        try {
            in >> j;
        } catch (const json::exception& ex) {
            std::cerr << "error: " << o.vectors_file << ": " << ex.what() << "\n";
            return 3;
        }
        const json& vecs = j.is_object() && j.contains("vectors") ? j["vectors"] : j;
        if (!vecs.is_array() || vecs.size() != 4)
            return die_usage(o.vectors_file + ": expected 4 vectors of 3 components");
        double flat[12];
        for (int k = 0; k < 4; ++k) {
            if (!vecs[k].is_array() || vecs[k].size() != 3)
                return die_usage(o.vectors_file + ": expected 4 vectors of 3 components");
            for (int c = 0; c < 3; ++c) {
                if (!vecs[k][c].is_number())
                    return die_usage(o.vectors_file + ": vector components must be numbers");
                flat[3 * k + c] = vecs[k][c].get<double>();
            }
        }
        ST_CHECK(spintomo_scheme_from_vectors(flat, &s.p));
    }

    if (!o.label.empty()) {
        ST_CHECK(spintomo_scheme_set_label(s.p, o.label.c_str()));
    } else if (o.have_random) {
        const std::string label = "random-" + std::to_string(o.seed) + "-" + o.mode;
        ST_CHECK(spintomo_scheme_set_label(s.p, label.c_str()));
    }

    CString rep_text;
    ST_CHECK(spintomo_scheme_report_json(s.p, &rep_text.p));
    const json rep = parse_report(rep_text.str());
    ST_CHECK(spintomo_scheme_save(s.p, o.out.c_str(), 1));
    print_scheme_summary(rep);
    std::cout << "wrote " << o.out << "\n";
    return rep.at("pass").get<bool>() ? 0 : 1;
}

// ---- scheme validate --------------------------------------------------------

int cmd_scheme_validate(const std::string& file, bool as_json) {
    SchemeHandle s;
    ST_CHECK(spintomo_scheme_load(file.c_str(), &s.p));
    CString rep_text;
    ST_CHECK(spintomo_scheme_report_json(s.p, &rep_text.p));
    if (as_json) {
        std::cout << rep_text.str() << "\n";
    } else {
        print_scheme_summary(parse_report(rep_text.str()));
    }
    return parse_report(rep_text.str()).at("pass").get<bool>() ? 0 : 1;
}

// ---- map forward / inverse --------------------------------------------------

constexpr int kMaxDim = 64;
constexpr int kMaxComponents = 4096;

int load_scheme_any(const std::string& path, SchemeHandle& s, TensorHandle& t, bool& is_tensor) {
    CString kind;
    ST_CHECK(spintomo_file_kind(path.c_str(), &kind.p));
    if (kind.str() == "scheme") {
        is_tensor = false;
        ST_CHECK(spintomo_scheme_load(path.c_str(), &s.p));
        return -1;
    }
    if (kind.str() == "tensor_scheme") {
        is_tensor = true;
        ST_CHECK(spintomo_tensor_load(path.c_str(), &t.p));
        return -1;
    }
    return die_usage(path + " has kind \"" + kind.str() + "\"; expected a scheme file");
}

int cmd_map_forward(const std::string& scheme_file, const std::string& state_file,
                    const std::string& out) {
    SchemeHandle s;
    TensorHandle t;
    bool is_tensor = false;
    if (const int rc = load_scheme_any(scheme_file, s, t, is_tensor); rc >= 0) return rc;

    std::vector<double> rho(2 * kMaxDim * kMaxDim);
    int dim = 0;
    ST_CHECK(spintomo_state_load(state_file.c_str(), rho.data(), kMaxDim, &dim));

    std::vector<double> w;
    std::string label;
    if (is_tensor) {
        const int n = spintomo_tensor_n(t.p);
        if (dim != (1 << n))
            return die_usage("state dimension " + std::to_string(dim) + " does not match the " +
                             std::to_string(n) + "-qubit scheme (expected " +
                             std::to_string(1 << n) + ")");
        w.resize(static_cast<std::size_t>(1) << (2 * n));
        ST_CHECK(spintomo_tensor_forward(t.p, rho.data(), w.data()));
    } else {
        if (dim != 2)
            return die_usage("state dimension " + std::to_string(dim) +
                             " does not match a single-qubit scheme");
        w.resize(4);
        ST_CHECK(spintomo_forward(s.p, rho.data(), w.data()));
        CString l;
        ST_CHECK(spintomo_scheme_label(s.p, &l.p));
        label = l.str();
    }

    ST_CHECK(spintomo_tomogram_save(out.c_str(), w.data(), static_cast<int>(w.size()),
                                    label.c_str()));
    double total = 0.0;
    for (double v : w) total += v;
    if (w.size() <= 16) {
        std::cout << "tomogram:";
        for (double v : w) std::cout << " " << fmt_value(v);
        std::cout << "\n";
    } else {
        std::cout << "tomogram: " << w.size() << " components\n";
    }
    std::cout << "sum: " << fmt_value(total) << "\n";
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_map_inverse(const std::string& scheme_file, const std::string& tomogram_file,
                    const std::string& out, bool check_physical) {
    SchemeHandle s;
    TensorHandle t;
    bool is_tensor = false;
    if (const int rc = load_scheme_any(scheme_file, s, t, is_tensor); rc >= 0) return rc;

    std::vector<double> w(kMaxComponents);
    int count = 0;
    ST_CHECK(spintomo_tomogram_load(tomogram_file.c_str(), w.data(), kMaxComponents, &count,
                                    nullptr));

    int dim = 2;
    std::vector<double> rho;
    if (is_tensor) {
        const int n = spintomo_tensor_n(t.p);
        if (count != (1 << (2 * n)))
            return die_usage("tomogram has " + std::to_string(count) + " components; the " +
                             std::to_string(n) + "-qubit scheme expects " +
                             std::to_string(1 << (2 * n)));
        dim = 1 << n;
        rho.resize(2 * static_cast<std::size_t>(dim) * dim);
        ST_CHECK(spintomo_tensor_inverse(t.p, w.data(), rho.data()));
    } else {
        if (count != 4)
            return die_usage("tomogram has " + std::to_string(count) +
                             " components; a single-qubit scheme expects 4");
        rho.resize(8);
        ST_CHECK(spintomo_inverse(s.p, w.data(), rho.data()));
    }

    ST_CHECK(spintomo_state_save(out.c_str(), rho.data(), dim));
    std::cout << "reconstructed " << dim << "x" << dim << " state\n";
    std::cout << "wrote " << out << "\n";

    if (!check_physical) return 0;

    if (is_tensor) {
        std::vector<double> eigs(dim);
        ST_CHECK(spintomo_eig_hermitian(rho.data(), dim, eigs.data()));
        double trace = 0.0;
        for (int r = 0; r < dim; ++r) trace += rho[2 * (r * dim + r)];
        const bool pass = eigs[dim - 1] >= -1e-10 && std::abs(trace - 1.0) <= 1e-10;
        std::cout << "min eigenvalue: " << fmt_value(eigs[dim - 1]) << "\n";
        std::cout << "trace: " << fmt_value(trace) << "\n";
        std::cout << "physical: " << (pass ? "yes" : "no") << "\n";
        return pass ? 0 : 1;
    }

    int pass = 0;
    CString rep_text;
    ST_CHECK(spintomo_is_physical(s.p, w.data(), -1.0, &pass, &rep_text.p));
    const json rep = parse_report(rep_text.str());
    std::cout << "diagonal sums: " << fmt_value(rep.at("diag_upper").get<double>()) << " "
              << fmt_value(rep.at("diag_lower").get<double>()) << "\n";
    std::cout << "determinant condition: " << fmt_value(rep.at("det_value").get<double>()) << "\n";
    std::cout << "normalization: " << fmt_value(rep.at("normalization").get<double>()) << "\n";
    std::cout << "physical: " << (pass != 0 ? "yes" : "no") << "\n";
    return pass != 0 ? 0 : 1;
}

// ---- tensor build / verify ----------------------------------------------------

int cmd_tensor_build(const std::vector<std::string>& factor_files, int n,
                     const std::string& label, const std::string& out) {
    if (n < 1) return die_usage("--n must be at least 1");
    if (factor_files.empty()) return die_usage("--factors requires at least one file");
    if (factor_files.size() != 1 && static_cast<int>(factor_files.size()) != n)
        return die_usage("--factors lists " + std::to_string(factor_files.size()) +
                         " files; give exactly one (replicated) or exactly --n");

    std::vector<SchemeHandle> holders(factor_files.size());
    for (std::size_t i = 0; i < factor_files.size(); ++i)
        ST_CHECK(spintomo_scheme_load(factor_files[i].c_str(), &holders[i].p));

    std::vector<const spintomo_scheme*> factors(n);
    for (int i = 0; i < n; ++i)
        factors[i] = holders[factor_files.size() == 1 ? 0 : i].p;

    TensorHandle t;
    ST_CHECK(spintomo_tensor_new(factors.data(), n, 0, label.c_str(), &t.p));
    ST_CHECK(spintomo_tensor_save(t.p, out.c_str(), 0));
    std::cout << "tensor scheme: " << n << " qubit(s), dimension " << (1 << n) << ", "
              << (1 << (2 * n)) << " components\n";
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_tensor_verify(const std::string& file, bool exhaustive, std::uint64_t seed, int samples,
                      bool as_json) {
    TensorHandle t;
    ST_CHECK(spintomo_tensor_load(file.c_str(), &t.p));
    CString rep_text;
    ST_CHECK(spintomo_tensor_verify_json(t.p, exhaustive ? 1 : 0, seed, samples, &rep_text.p));
    const json rep = parse_report(rep_text.str());
    if (as_json) {
        std::cout << rep_text.str() << "\n";
    } else {
        std::cout << "factors: " << rep.at("n").get<int>() << "\n";
        std::cout << "mode: " << (rep.at("exhaustive").get<bool>() ? "exhaustive" : "sampled")
                  << "\n";
        std::cout << "orthogonality pairs: " << rep.at("orthogonality_pairs").get<long long>()
                  << ", residual " << fmt_residual(rep.at("orthogonality_residual").get<double>())
                  << "\n";
        std::cout << "completeness tuples: " << rep.at("completeness_tuples").get<long long>()
                  << ", residual " << fmt_residual(rep.at("completeness_residual").get<double>())
                  << "\n";
        std::cout << "trace residuals: U " << fmt_residual(rep.at("trace_U_residual").get<double>())
                  << ", D " << fmt_residual(rep.at("trace_D_residual").get<double>()) << "\n";
        std::cout << "sum residuals: U " << fmt_residual(rep.at("sum_U_residual").get<double>())
                  << ", D " << fmt_residual(rep.at("sum_D_residual").get<double>()) << "\n";
        std::cout << "pass: " << (rep.at("pass").get<bool>() ? "yes" : "no") << "\n";
    }
    return rep.at("pass").get<bool>() ? 0 : 1;
}

// ---- simulate -------------------------------------------------------------

struct TrialRow {
    spintomo_status status = SPINTOMO_OK;
    std::string error;
    std::uint64_t trial_seed = 0;
    double frobenius_error = 0.0;
    double min_eigenvalue = 0.0;
    double trace = 0.0;
};

double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
}

int cmd_simulate(const std::string& scheme_file, const std::string& state_file, long long shots,
                 std::uint64_t seed, bool have_seed, long long trials,
                 const std::string& csv_file) {
    if (shots < 1) return die_usage("--shots must be at least 1");
    if (trials < 1) return die_usage("--trials must be at least 1");

    CString kind;
    ST_CHECK(spintomo_file_kind(scheme_file.c_str(), &kind.p));
    if (kind.str() != "scheme")
        return die_usage(scheme_file + " has kind \"" + kind.str() +
                         "\"; simulate needs a single-qubit scheme");

    SchemeHandle s;
    ST_CHECK(spintomo_scheme_load(scheme_file.c_str(), &s.p));
    double rho[8];
    int dim = 0;
    ST_CHECK(spintomo_state_load(state_file.c_str(), rho, 2, &dim));
    if (dim != 2) return die_usage("simulate needs a 2x2 state");

    if (!have_seed) {
        std::random_device rd;
        seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    std::cout << "seed: " << seed << "\n";

    // Trials are independent by construction (one derived seed each), so fan
    // them out in waves; rows are keyed by trial index.
    std::vector<TrialRow> rows(trials);
    const auto run_trial = [&](long long index) {
        TrialRow& row = rows[index];
        row.trial_seed = spintomo_trial_seed(seed, static_cast<std::uint64_t>(index));
        long long counts[4];
        spintomo_status st = spintomo_simulate(s.p, rho, shots, row.trial_seed, counts);
        if (st == SPINTOMO_OK) {
            double metrics[3];
            st = spintomo_estimate(s.p, counts, shots, rho, nullptr, nullptr, metrics);
            row.frobenius_error = metrics[0];
            row.min_eigenvalue = metrics[1];
            row.trace = metrics[2];
        }
        if (st != SPINTOMO_OK) {
            row.status = st;
            row.error = spintomo_last_error();
        }
    };

    const long long workers = std::max(1u, std::thread::hardware_concurrency());
    for (long long base = 0; base < trials; base += workers) {
        std::vector<std::thread> pool;
        for (long long i = base; i < std::min(trials, base + workers); ++i)
            pool.emplace_back(run_trial, i);
        for (std::thread& th : pool) th.join();
    }

    for (const TrialRow& row : rows)
        if (row.status != SPINTOMO_OK) {
            std::cerr << "error: " << row.error << "\n";
            return exit_code_for(row.status);
        }

    if (!csv_file.empty()) {
        std::ofstream csv(csv_file);
        if (!csv) {
            std::cerr << "error: cannot open " << csv_file << " for writing\n";
            return 3;
        }
        csv << "trial,seed,shots,frobenius_error,min_eigenvalue,trace\n";
        csv << std::setprecision(17);
        for (long long i = 0; i < trials; ++i)
            csv << i << "," << rows[i].trial_seed << "," << shots << ","
                << rows[i].frobenius_error << "," << rows[i].min_eigenvalue << ","
                << rows[i].trace << "\n";
        if (!csv) {
            std::cerr << "error: write failure on " << csv_file << "\n";
            return 3;
        }
    }

    std::vector<double> errors;
    for (long long i = 0; i < trials; ++i) {
        errors.push_back(rows[i].frobenius_error);
        std::cout << "trial " << i << ": error " << fmt_residual(rows[i].frobenius_error)
                  << ", min eigenvalue " << fmt_value(rows[i].min_eigenvalue) << ", trace "
                  << fmt_value(rows[i].trace) << "\n";
    }
    std::cout << "error quantiles: p25 " << fmt_residual(quantile(errors, 0.25)) << ", median "
              << fmt_residual(quantile(errors, 0.5)) << ", p75 "
              << fmt_residual(quantile(errors, 0.75)) << "\n";
    if (!csv_file.empty()) std::cout << "wrote " << csv_file << "\n";
    return 0;
}

// ---- selftest ----------------------------------------------------------------

int cmd_selftest(std::uint64_t seed, int iterations) {
    if (iterations < 1) return die_usage("--iterations must be at least 1");
    std::cout << "seed: " << seed << ", iterations: " << iterations << "\n";
    CString rep_text;
    ST_CHECK(spintomo_selftest_json(seed, iterations, &rep_text.p));
    const json rep = parse_report(rep_text.str());
    for (const json& suite : rep.at("suites")) {
        std::cout << std::left << std::setw(36) << suite.at("name").get<std::string>()
                  << std::setw(12) << fmt_residual(suite.at("worst").get<double>())
                  << (suite.at("pass").get<bool>() ? "pass" : "FAIL");
        const std::string note = suite.at("note").get<std::string>();
        if (!note.empty()) std::cout << "  (" << note << ")";
        std::cout << "\n";
    }
    const bool pass = rep.at("pass").get<bool>();
    std::cout << (pass ? "all suites passed" : "selftest FAILED") << "\n";
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"normalized non-redundant tomographic schemes for spin states"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(spintomo_version()));

    // scheme
    auto* scheme = app.add_subcommand("scheme", "build and inspect single-qubit schemes");
    scheme->require_subcommand(1);

    SchemeNewOpts sn;
    auto* scheme_new = scheme->add_subcommand("new", "build a scheme and write it to a file");
    auto* opt_preset = scheme_new->add_option("--preset", sn.preset, "bundled scheme name");
    auto* opt_vectors =
        scheme_new->add_option("--vectors", sn.vectors_file, "JSON file with 4 Bloch vectors");
    auto* opt_random = scheme_new->add_option("--random", sn.seed, "draw a random scheme from this seed");
    scheme_new->add_option("--mode", sn.mode, "random vector class")
        ->check(CLI::IsMember({"pure", "mixed"}))
        ->capture_default_str();
    scheme_new->add_option("--label", sn.label, "label stored in the file");
    scheme_new->add_option("--out", sn.out, "output scheme file")->required();

    std::string validate_file;
    bool validate_json = false;
    auto* scheme_validate = scheme->add_subcommand("validate", "run the full identity suite on a scheme file");
    scheme_validate->add_option("file", validate_file, "scheme file")->required();
    scheme_validate->add_flag("--json", validate_json, "print the machine-readable report");

    // map
    auto* map_cmd = app.add_subcommand("map", "apply the forward or inverse map");
    map_cmd->require_subcommand(1);

    std::string fw_scheme, fw_state, fw_out;
    auto* map_forward = map_cmd->add_subcommand("forward", "density matrix -> tomogram");
    map_forward->add_option("--scheme", fw_scheme, "scheme or tensor-scheme file")->required();
    map_forward->add_option("--state", fw_state, "state file")->required();
    map_forward->add_option("--out", fw_out, "output tomogram file")->required();

    std::string inv_scheme, inv_tomogram, inv_out;
    bool inv_check = false;
    auto* map_inverse = map_cmd->add_subcommand("inverse", "tomogram -> density matrix");
    map_inverse->add_option("--scheme", inv_scheme, "scheme or tensor-scheme file")->required();
    map_inverse->add_option("--tomogram", inv_tomogram, "tomogram file")->required();
    map_inverse->add_option("--out", inv_out, "output state file")->required();
    map_inverse->add_flag("--check-physical", inv_check,
                          "also test physicality; exit 1 when it fails");

    // tensor
    auto* tensor = app.add_subcommand("tensor", "compose and verify multi-qubit schemes");
    tensor->require_subcommand(1);

    std::vector<std::string> tb_factors;
    int tb_n = 0;
    std::string tb_label, tb_out;
    auto* tensor_build = tensor->add_subcommand("build", "compose factor schemes");
    tensor_build->add_option("--factors", tb_factors, "factor scheme file(s)")
        ->required()
        ->delimiter(',');
    tensor_build->add_option("--n", tb_n, "number of qubits")->required();
    tensor_build->add_option("--label", tb_label, "label stored in the file");
    tensor_build->add_option("--out", tb_out, "output tensor-scheme file")->required();

    std::string tv_file;
    bool tv_exhaustive = false, tv_json = false;
    std::uint64_t tv_seed = 1;
    int tv_samples = 1000;
    auto* tensor_verify = tensor->add_subcommand("verify", "check tensor identities");
    tensor_verify->add_option("file", tv_file, "tensor-scheme file")->required();
    tensor_verify->add_flag("--exhaustive", tv_exhaustive,
                            "check every pair and tuple (2 qubits at most)");
    tensor_verify->add_option("--seed", tv_seed, "sampling seed")->capture_default_str();
    tensor_verify->add_option("--samples", tv_samples, "sampled probes")->capture_default_str();
    tensor_verify->add_flag("--json", tv_json, "print the machine-readable report");

    // simulate
    std::string sim_scheme, sim_state, sim_csv;
    long long sim_shots = 0, sim_trials = 1;
    std::uint64_t sim_seed = 0;
    auto* simulate = app.add_subcommand("simulate", "finite-shot sampling and reconstruction");
    simulate->add_option("--scheme", sim_scheme, "scheme file")->required();
    simulate->add_option("--state", sim_state, "state file")->required();
    simulate->add_option("--shots", sim_shots, "shots per component")->required();
    auto* opt_seed = simulate->add_option("--seed", sim_seed, "master seed (drawn when absent)");
    simulate->add_option("--trials", sim_trials, "independent trials")->capture_default_str();
    simulate->add_option("--csv", sim_csv, "write per-trial metrics to this CSV file");

    // selftest
    std::uint64_t st_seed = 1;
    int st_iterations = 200;
    auto* selftest = app.add_subcommand("selftest", "run every module property suite");
    selftest->add_option("--seed", st_seed, "suite seed")->capture_default_str();
    selftest->add_option("--iterations", st_iterations, "cases per suite")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    sn.have_preset = opt_preset->count() > 0;
    sn.have_vectors = opt_vectors->count() > 0;
    sn.have_random = opt_random->count() > 0;

    if (scheme_new->parsed()) return cmd_scheme_new(sn);
    if (scheme_validate->parsed()) return cmd_scheme_validate(validate_file, validate_json);
    if (map_forward->parsed()) return cmd_map_forward(fw_scheme, fw_state, fw_out);
    if (map_inverse->parsed()) return cmd_map_inverse(inv_scheme, inv_tomogram, inv_out, inv_check);
    if (tensor_build->parsed()) return cmd_tensor_build(tb_factors, tb_n, tb_label, tb_out);
    if (tensor_verify->parsed())
        return cmd_tensor_verify(tv_file, tv_exhaustive, tv_seed, tv_samples, tv_json);
    if (simulate->parsed())
        return cmd_simulate(sim_scheme, sim_state, sim_shots, sim_seed, opt_seed->count() > 0,
                            sim_trials, sim_csv);
    if (selftest->parsed()) return cmd_selftest(st_seed, st_iterations);
    return die_usage("no subcommand given");
}
