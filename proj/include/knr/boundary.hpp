#pragma once

#include "knr/spectral.hpp"
#include "knr/types.hpp"

#include <variant>
#include <vector>

namespace knr {

/// One point of the boundary generating curve: z = [Av,v]_J / [v,v]_J for an
/// eigenvector v of H_theta(A), tagged with the sign of [v,v]_J and the
/// eigenvalue it touches (the support line is cos(theta) Re z + sin(theta)
/// Im z = lambda).
struct TaggedPoint {
    Complex z;
    int sign = 0;
    double theta = 0.0;
    double lambda = 0.0;
};

struct BoundaryCurve {
    std::vector<TaggedPoint> points;       ///< sorted by theta
    std::vector<double> invalid_thetas;    ///< grid angles where H_theta left class J
};

/// Curve points at a single support direction. Requires H_theta(A) in class J
/// (throws StructureError otherwise); eigenvectors with |[v,v]_J| below tol
/// are skipped.
std::vector<TaggedPoint> boundary_points(const CMatrix& A, const Metric& J, double theta,
                                         double tol = 1e-8);

/// Uniform sweep of grid_size angles over [0, 2*pi).
BoundaryCurve sweep_boundary(const CMatrix& A, const Metric& J, int grid_size);

struct Segment {
    Complex a, b;
};

/// The complementary pair of rays {t a + (1-t) b : t <= 0 or t >= 1}.
struct RayPair {
    Complex a, b;
};

using JoinResult = std::variant<Segment, RayPair>;

/// Pseudo-convex join of two curve points: the segment when the generating
/// signs agree, the complementary rays when they differ.
JoinResult pseudo_convex_join(const TaggedPoint& p1, const TaggedPoint& p2);

} // namespace knr
