#include "knr/hyperbola.hpp"

#include <cmath>

namespace knr {

double Hyperbola::focal_half_distance() const {
    return std::hypot(semi_transverse, semi_nontransverse);
}

bool Hyperbola::degenerate() const {
    return !(semi_transverse > 0.0) || !(semi_nontransverse > 0.0);
}

Hyperbola Hyperbola::from_axes(Complex center, double gamma, double semi_transverse,
                               double semi_nontransverse) {
    Hyperbola h;
    h.center = center;
    h.gamma = gamma;
    h.semi_transverse = semi_transverse;
    h.semi_nontransverse = semi_nontransverse;
    const Complex dir = std::polar(std::hypot(semi_transverse, semi_nontransverse), gamma);
    h.foci = {center + dir, center - dir};
    return h;
}

Hyperbola Hyperbola::from_foci_nontransverse(Complex f_plus, Complex f_minus,
                                             double nontransverse_length) {
    Hyperbola h;
    h.center = 0.5 * (f_plus + f_minus);
    const Complex half = 0.5 * (f_plus - f_minus);
    const double c = std::abs(half);
    const double b = 0.5 * nontransverse_length;
    if (!(c > 0.0))
        throw StructureError("hyperbola: coincident foci are degenerate");
    if (!(b >= 0.0) || b >= c)
        throw StructureError("hyperbola: non-transverse semi-axis must lie below the "
                             "focal half-distance");
    h.gamma = std::arg(half);
    h.semi_nontransverse = b;
    h.semi_transverse = std::sqrt(c * c - b * b);
    h.foci = {f_plus, f_minus};
    return h;
}

Hyperbola Hyperbola::transformed(Complex rot, Complex shift) const {
    Hyperbola h = *this;
    h.center = rot * center + shift;
    h.gamma = gamma + std::arg(rot);
    h.foci = {rot * foci[0] + shift, rot * foci[1] + shift};
    return h;
}

double hyperbola_membership(const Hyperbola& h, Complex z) {
    if (h.degenerate())
        throw StructureError("hyperbola_membership: degenerate hyperbola");
    const Complex rel = (z - h.center) * std::polar(1.0, -h.gamma);
    const double x = rel.real() / h.semi_transverse;
    const double y = rel.imag() / h.semi_nontransverse;
    return x * x - y * y - 1.0;
}

bool hyperbola_support(const Hyperbola& h, double theta, double& lower_plus,
                       double& upper_minus) {
    const double t = theta - h.gamma;
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double val = h.semi_transverse * h.semi_transverse * c * c -
                       h.semi_nontransverse * h.semi_nontransverse * s * s;
    if (val < 0.0)
        return false;
    const double rho = std::sqrt(val);
    const double center_proj = std::cos(theta) * h.center.real() +
                               std::sin(theta) * h.center.imag();
    lower_plus = center_proj + rho;
    upper_minus = center_proj - rho;
    return true;
}

double HyperbolaFitParams::gamma() const {
    return 0.5 * std::arg(s());
}

bool HyperbolaFitParams::degenerate() const {
    return p * p >= q * q + t * t;
}

double HyperbolaFitParams::theta0() const {
    const double mag = std::abs(s());
    if (degenerate())
        throw StructureError("fit parameters are degenerate (p^2 >= q^2 + t^2)");
    return std::atan(std::sqrt((mag + p) / (mag - p)));
}

std::pair<double, double> HyperbolaFitParams::window() const {
    const double g = gamma();
    const double t0 = theta0();
    return {g - t0, g + t0};
}

std::pair<HyperbolaFitParams, double> fit_quadratic(const CMatrix& A, const Metric& J,
                                                    const std::vector<double>& grid) {
    std::vector<SupportData> samples;
    for (double th : grid) {
        const SupportData sd = support_bounds(A, J, th);
        if (sd.valid)
            samples.push_back(sd);
    }
    if (samples.size() < 3)
        throw StructureError("fit_quadratic: fewer than 3 valid support angles");

    // normal equations for y = p + q cos(2 theta) + t sin(2 theta)
    double m[3][3] = {};
    double rhs[3] = {};
    for (const auto& sd : samples) {
        const double basis[3] = {1.0, std::cos(2.0 * sd.theta), std::sin(2.0 * sd.theta)};
        const double y = sd.lambda_R * sd.lambda_R;
        for (int i = 0; i < 3; ++i) {
            rhs[i] += basis[i] * y;
            for (int j = 0; j < 3; ++j)
                m[i][j] += basis[i] * basis[j];
        }
    }
    // Gaussian elimination, 3x3
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int i = col + 1; i < 3; ++i)
            if (std::abs(m[i][col]) > std::abs(m[piv][col]))
                piv = i;
        if (std::abs(m[piv][col]) < 1e-14)
            throw StructureError("fit_quadratic: singular normal equations (grid too "
                                 "narrow)");
        if (piv != col) {
            std::swap(m[piv], m[col]);
            std::swap(rhs[piv], rhs[col]);
            std::swap(perm[piv], perm[col]);
        }
        for (int i = col + 1; i < 3; ++i) {
            const double f = m[i][col] / m[col][col];
            for (int j = col; j < 3; ++j)
                m[i][j] -= f * m[col][j];
            rhs[i] -= f * rhs[col];
        }
    }
    double sol[3];
    for (int i = 2; i >= 0; --i) {
        double s = rhs[i];
        for (int j = i + 1; j < 3; ++j)
            s -= m[i][j] * sol[j];
        sol[i] = s / m[i][i];
    }

    HyperbolaFitParams params;
    params.p = sol[0];
    params.q = sol[1];
    params.t = sol[2];

    double residual = 0.0;
    for (const auto& sd : samples) {
        const double model = params.p + params.q * std::cos(2.0 * sd.theta) +
                             params.t * std::sin(2.0 * sd.theta);
        residual = std::max(residual, std::abs(sd.lambda_R * sd.lambda_R - model));
        residual = std::max(residual, std::abs(sd.lambda_L + sd.lambda_R));
    }

    if (params.degenerate())
        throw StructureError("fit_quadratic: degenerate fit (p^2 >= q^2 + t^2)");
    return {params, residual};
}

Hyperbola hyperbola_from_fit(const HyperbolaFitParams& params, Complex center) {
    if (params.degenerate())
        throw StructureError("hyperbola_from_fit: degenerate parameters");
    const double mag = std::abs(params.s());
    const double g = params.gamma();
    return Hyperbola::from_axes(center, g, std::sqrt(mag + params.p),
                                std::sqrt(mag - params.p));
}

} // namespace knr
