#pragma once

#include "knr/classify.hpp"
#include "knr/sampling.hpp"
#include "knr/tridiagonal.hpp"
#include "knr/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace knr::io {

using json = nlohmann::json;

/// Either a structured tridiagonal problem or a raw (matrix, metric) pair.
struct ParsedInput {
    std::optional<TridiagonalSpec> tridiagonal;
    std::optional<std::pair<CMatrix, Metric>> dense;

    /// Dense view of whichever form was parsed.
    std::pair<CMatrix, Metric> materialize() const;
};

/// Accepted complex encodings: plain number, [re, im] pair, or an "a+bi"
/// string.
Complex parse_complex(const json& v, const std::string& where);

ParsedInput parse_input_text(const std::string& text, const std::string& origin);
ParsedInput parse_input(const std::string& path);

struct JobSpec {
    std::string input_path;
    std::string out_path;  ///< empty = stdout
    std::string svg_path;  ///< empty = no SVG
    int grid = 720;
    std::size_t samples = 100000;
    std::uint64_t seed = 42;
    double tol = 1e-6;

    void validate() const;
};

struct RunResult {
    json report;
    int exit_code = 0;
    std::string csv; ///< boundary / sample payload when applicable
    std::string svg;
};

RunResult run_certify(const JobSpec& job);
RunResult run_classify(const JobSpec& job);
RunResult run_boundary(const JobSpec& job);
RunResult run_sample(const JobSpec& job);

json complex_json(Complex z);
json hyperbola_json(const Hyperbola& h);
json classification_json(const RangeClassification& rc);
json containment_json(const ContainmentReport& rep);

/// Stable text form: sorted keys (nlohmann object order), two-space indent,
/// round-trip-exact numbers, trailing newline.
std::string dump_report(const json& report);

std::string boundary_csv(const BoundaryCurve& curve);
std::string cloud_csv(const std::vector<SampleCloud>& clouds);

/// Single-figure SVG: curve points as sign-colored polylines (+ blue,
/// - red), eigenvalues as green dots, certified hyperbolas dashed. Math
/// orientation (y up), autoscaled viewBox with 10% padding, no timestamps.
std::string svg_render(const BoundaryCurve& curve, const std::vector<Complex>& eigenvalues,
                       const std::vector<Hyperbola>& overlays);

} // namespace knr::io
