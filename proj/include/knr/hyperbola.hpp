#pragma once

#include "knr/spectral.hpp"
#include "knr/types.hpp"

#include <array>
#include <utility>

namespace knr {

/// A hyperbola in the plane: center, transverse-axis direction gamma, and
/// semi-axis lengths. The foci sit at center +- c~ e^{i gamma} with
/// c~^2 = a~^2 + b~^2. The "disc" it bounds is the pair of convex regions on
/// the focal sides of the two branches.
struct Hyperbola {
    Complex center{0.0, 0.0};
    double gamma = 0.0;
    double semi_transverse = 0.0;
    double semi_nontransverse = 0.0;
    std::array<Complex, 2> foci{};

    double focal_half_distance() const;
    bool degenerate() const;

    static Hyperbola from_axes(Complex center, double gamma, double semi_transverse,
                               double semi_nontransverse);
    /// Build from the two foci and the full non-transverse axis length
    /// (the form the entry-wise certificates produce).
    static Hyperbola from_foci_nontransverse(Complex f_plus, Complex f_minus,
                                             double nontransverse_length);

    /// Affine image under z -> rot * z + shift with |rot| = 1.
    Hyperbola transformed(Complex rot, Complex shift) const;
};

/// Signed membership in the hyperbolic disc: (X/a~)^2 - (Y/b~)^2 - 1 in
/// canonical coordinates. Positive inside the convex branch regions (the
/// sides containing the foci), negative between the branches.
double hyperbola_membership(const Hyperbola& h, Complex z);

/// Support of the branch regions in direction theta, relative to the center:
/// +-sqrt(a~^2 cos^2(t) - b~^2 sin^2(t)) at t = theta - gamma. Returns false
/// when theta is outside the hyperbola's support window.
bool hyperbola_support(const Hyperbola& h, double theta, double& lower_plus,
                       double& upper_minus);

/// Parameters of the quadratic support-function law z^2 = p + q cos(2 theta)
/// + t sin(2 theta) for a centered hyperbolic range.
struct HyperbolaFitParams {
    double p = 0.0;
    double q = 0.0;
    double t = 0.0;

    Complex s() const { return Complex(q, t); }
    double gamma() const;
    double theta0() const;
    std::pair<double, double> window() const; ///< (gamma - theta0, gamma + theta0)
    bool degenerate() const;                  ///< p^2 >= q^2 + t^2
};

/// Least-squares fit of (p, q, t) to lambda_R(theta)^2 over the valid angles of
/// the grid. The returned residual is the worst of |lambda_R^2 - model| and
/// |lambda_L + lambda_R| (the centered law forces lambda_L = -lambda_R).
/// Throws when fewer than 3 angles are valid or the fit is degenerate.
std::pair<HyperbolaFitParams, double> fit_quadratic(const CMatrix& A, const Metric& J,
                                                    const std::vector<double>& grid);

/// Hyperbola described by fit parameters, centered at `center`: semi-axes
/// sqrt(|s|+p) and sqrt(|s|-p), transverse direction arg(s)/2, focal
/// half-distance sqrt(2|s|).
Hyperbola hyperbola_from_fit(const HyperbolaFitParams& params, Complex center);

} // namespace knr
