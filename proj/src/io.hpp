#pragma once

#include <string>

#include "selftest.hpp"

namespace spintomo::io {

inline constexpr const char* kFormatVersion = "1.0";

/// File kinds: "scheme", "state", "tomogram", "counts", "tensor_scheme".
/// All files carry format_version (major-gated on load) and kind. Complex
/// entries are [re, im] pairs, matrices row-major; see docs/formats.md.

void save_scheme(const std::string& path, const Spin12Scheme& s, bool include_matrices = true);
Spin12Scheme load_scheme(const std::string& path);

void save_state(const std::string& path, const DensityMatrix& rho);
DensityMatrix load_state(const std::string& path);

void save_tomogram(const std::string& path, const Tomogram& t);
Tomogram load_tomogram(const std::string& path);

void save_counts(const std::string& path, const CountRecord& c);
CountRecord load_counts(const std::string& path);

void save_tensor_scheme(const std::string& path, const TensorScheme& ts,
                        bool include_matrices = false);
TensorScheme load_tensor_scheme(const std::string& path);

/// In-memory JSON text codecs behind the file ops; handy for tests and for
/// report plumbing.
std::string scheme_to_json(const Spin12Scheme& s, bool include_matrices = true);
Spin12Scheme scheme_from_json(const std::string& text);
std::string state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const std::string& text);
std::string tomogram_to_json(const Tomogram& t);
Tomogram tomogram_from_json(const std::string& text);
std::string counts_to_json(const CountRecord& c);
CountRecord counts_from_json(const std::string& text);
std::string tensor_scheme_to_json(const TensorScheme& ts, bool include_matrices = false);
TensorScheme tensor_scheme_from_json(const std::string& text);

/// Report serializers, all one-way. scheme_report combines the geometric
/// validation of the quadruple with the operator identity diagnostics.
std::string scheme_report_to_json(const Spin12Scheme& s);
std::string physicality_to_json(const PhysicalityReport& r);
std::string tensor_report_to_json(const TensorIdentityReport& r);
std::string selftest_report_to_json(const SelftestReport& r);

/// "kind" field of a file without fully decoding it.
std::string probe_kind(const std::string& path);

/// Bundled example schemes: "example1" (four unit vectors) and "example2"
/// (four vectors of common length sqrt(5)/3).
Spin12Scheme preset(const std::string& name);

} // namespace spintomo::io
