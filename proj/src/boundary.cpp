#include "knr/boundary.hpp"

#include "knr/krein.hpp"

#include <cmath>
#include <numbers>

namespace knr {

std::vector<TaggedPoint> boundary_points(const CMatrix& A, const Metric& J, double theta,
                                         double tol) {
    const SupportData sd = support_bounds(A, J, theta, tol);
    if (!sd.valid)
        throw StructureError("boundary_points: H_theta(A) is not in class J at this angle");

    const CMatrix H = h_theta(A, J, theta);
    auto pairs = eig_dense(H, 1e-10);
    attach_j_norms(pairs, J);

    std::vector<TaggedPoint> points;
    for (const auto& p : pairs) {
        const double jn = p.j_norm.value_or(0.0);
        if (std::abs(jn) <= tol)
            continue;
        const Complex z =
            indefinite_inner(A.apply(p.vector), p.vector, J) / Complex(jn, 0.0);
        points.push_back(TaggedPoint{z, jn > 0.0 ? 1 : -1, theta, p.value.real()});
    }
    return points;
}

BoundaryCurve sweep_boundary(const CMatrix& A, const Metric& J, int grid_size) {
    if (grid_size < 16)
        throw StructureError("sweep_boundary: grid_size must be >= 16");
    BoundaryCurve curve;
    const double two_pi = 2.0 * std::numbers::pi;
    for (int k = 0; k < grid_size; ++k) {
        const double theta = two_pi * k / grid_size;
        const SupportData sd = support_bounds(A, J, theta);
        if (!sd.valid) {
            curve.invalid_thetas.push_back(theta);
            continue;
        }
        auto pts = boundary_points(A, J, theta);
        curve.points.insert(curve.points.end(), pts.begin(), pts.end());
    }
    return curve;
}

JoinResult pseudo_convex_join(const TaggedPoint& p1, const TaggedPoint& p2) {
    const double scale = std::max({std::abs(p1.z), std::abs(p2.z), 1.0});
    if (std::abs(p1.z - p2.z) <= 1e-14 * scale) {
        if (p1.sign != p2.sign)
            throw StructureError("pseudo_convex_join: coincident points with opposite "
                                 "signs are degenerate");
        throw StructureError("pseudo_convex_join: points must be distinct");
    }
    if (p1.sign == p2.sign)
        return Segment{p1.z, p2.z};
    return RayPair{p1.z, p2.z};
}

} // namespace knr
