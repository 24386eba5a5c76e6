#pragma once

#include "knr/boundary.hpp"
#include "knr/hyperbola.hpp"
#include "knr/types.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace knr {

enum class RangeKind {
    HyperbolicDisc,
    BihyperbolicNested,
    BihyperbolicFlat,
    WholePlane,
    DegenerateRays,
    RealLine,
    Point,
    NumericOnly,
};

const char* to_string(RangeKind kind);

/// A flat portion of the boundary: the support line at theta touches along
/// the whole segment [a, b].
struct FlatSegment {
    Complex a, b;
    double theta = 0.0;
};

/// Shape verdict for a range, with the evidence trail that produced it.
/// Payload fields are populated according to `kind`:
///  - HyperbolicDisc: disc
///  - BihyperbolicNested: outer, inner
///  - BihyperbolicFlat: h_plus, h_minus, flats
///  - DegenerateRays: ray_endpoints
///  - Point: point_value
///  - NumericOnly: curve
struct RangeClassification {
    RangeKind kind = RangeKind::NumericOnly;
    std::optional<Hyperbola> disc;
    std::optional<Hyperbola> outer, inner;
    std::optional<Hyperbola> h_plus, h_minus;
    std::vector<FlatSegment> flats;
    std::array<Complex, 2> ray_endpoints{};
    Complex point_value{0.0, 0.0};
    std::optional<BoundaryCurve> curve;
    std::vector<Complex> corners;
    std::vector<std::string> evidence;
};

/// The 2x2 classification: a scalar matrix is a point; a J-Hermitian matrix
/// degenerates into two half-rays (real eigenvalues) or the real line
/// (conjugate pair); otherwise the range is bounded by the non-degenerate
/// hyperbola with foci at the eigenvalues exactly when
/// 2 Re(conj(l1) l2) < Tr(A# A) < |l1|^2 + |l2|^2.
RangeClassification hyperbola_2x2(const CMatrix& A, const Metric& J, double tol = 1e-10);

/// Full classification pipeline: interlacing scan (whole plane), entry-wise
/// tridiagonal certificates, quadratic support fit, numeric fallback.
RangeClassification classify_range(const CMatrix& A, const Metric& J,
                                   int grid_size = 720);

/// True when every vertex and focus of `inner` lies strictly inside the
/// branch regions of `outer`.
bool hyperbola_nested_inside(const Hyperbola& inner, const Hyperbola& outer,
                             double tol = 1e-8);

} // namespace knr
