#include "knr/sampling.hpp"

#include "knr/krein.hpp"
#include "knr/spectral.hpp"

#include <cmath>
#include <numbers>

namespace knr {

double GaussianStream::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller on uniforms from the standardized mt19937_64 bit stream.
    const double inv = 1.0 / 9007199254740992.0; // 2^-53
    double u1 = ((rng_() >> 11) + 1.0) * inv;    // in (0, 1]
    double u2 = (rng_() >> 11) * inv;            // in [0, 1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(ang);
    have_spare_ = true;
    return r * std::cos(ang);
}

Complex GaussianStream::next_complex() {
    const double re = next();
    const double im = next();
    return Complex(re, im);
}

SampleCloud sample_range(const CMatrix& a, const Metric& j, std::size_t n_samples,
                         int sign, std::uint64_t seed) {
    if (a.dim() != j.dim())
        throw StructureError("sample_range: dimension mismatch");
    if (sign != 1 && sign != -1)
        throw StructureError("sample_range: sign must be +1 or -1");
    if (n_samples == 0)
        throw StructureError("sample_range: need at least one sample");
    const std::size_t r = j.plus_count();
    if (sign == 1 && r == 0)
        throw StructureError("sample_range: the positive sign class is empty (r = 0)");
    if (sign == -1 && r == j.dim())
        throw StructureError("sample_range: the negative sign class is empty (r = n)");

    const std::size_t n = a.dim();
    const double clip = 1e3 * std::max(1.0, a.frobenius_norm());
    GaussianStream gauss(seed);

    SampleCloud cloud;
    cloud.seed = seed;
    cloud.count = n_samples;
    cloud.sign = sign;
    cloud.points.reserve(n_samples);

    CVector x(n);
    std::size_t produced = 0;
    std::size_t attempts = 0;
    const std::size_t attempt_cap = 100 * n_samples + 1000;
    while (produced < n_samples) {
        if (++attempts > attempt_cap)
            throw ConvergenceError("sample_range: rejection rate above 99%; the sign "
                                   "class is numerically inaccessible");
        for (std::size_t i = 0; i < n; ++i)
            x[i] = gauss.next_complex();
        double nx2 = 0.0;
        for (const auto& v : x)
            nx2 += std::norm(v);
        const double s = indefinite_inner(x, x, j).real();
        if (std::abs(s) < 1e-6 * nx2) {
            ++cloud.rejected;
            continue;
        }
        if ((s > 0.0 ? 1 : -1) != sign) {
            continue; // the other sign class; not a rejection, just re-draw
        }
        const double inv = 1.0 / std::sqrt(std::abs(s));
        for (auto& v : x)
            v *= inv;
        Complex z = indefinite_inner(a.apply(x), x, j);
        if (sign == -1)
            z = -z;
        ++produced;
        if (std::abs(z) > clip) {
            ++cloud.clipped;
            continue;
        }
        cloud.points.emplace_back(z, sign);
    }
    return cloud;
}

namespace {

// Lower support of the convex branch-region hull in direction theta: the
// smallest admissible projection over the listed hyperbolas ("plus" side),
// and the mirrored upper support for the minus side. Valid only on the
// common support window; infinite otherwise.
struct HullSupport {
    std::vector<Hyperbola> parts;

    bool lower(double theta, double& out) const {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& h : parts) {
            double lp, um;
            if (!hyperbola_support(h, theta, lp, um))
                return false;
            best = std::min(best, lp);
        }
        out = best;
        return true;
    }
    bool upper(double theta, double& out) const {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& h : parts) {
            double lp, um;
            if (!hyperbola_support(h, theta, lp, um))
                return false;
            best = std::max(best, um);
        }
        out = best;
        return true;
    }
};

double project(Complex z, double theta) {
    return std::cos(theta) * z.real() + std::sin(theta) * z.imag();
}

// Slack of a plus-side sample against the hull: min over support angles of
// proj(z) - support(theta); >= 0 means inside. Coarse grid plus golden
// refinement around the best angles.
double hull_slack(const HullSupport& hull, Complex z, bool plus_side) {
    const int coarse = 256;
    const double two_pi = 2.0 * std::numbers::pi;
    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    bool any = false;
    for (int k = 0; k < coarse; ++k) {
        const double th = two_pi * k / coarse;
        double s;
        const bool ok = plus_side ? hull.lower(th, s) : hull.upper(th, s);
        if (!ok)
            continue;
        const double gap = plus_side ? project(z, th) - s : s - project(z, th);
        if (gap < best) {
            best = gap;
            best_theta = th;
        }
        any = true;
    }
    if (!any)
        return std::numeric_limits<double>::infinity();
    // golden-section refinement in a +-1.5 grid-step bracket
    double lo = best_theta - 1.5 * two_pi / coarse;
    double hi = best_theta + 1.5 * two_pi / coarse;
    auto eval = [&](double th) {
        double s;
        const bool ok = plus_side ? hull.lower(th, s) : hull.upper(th, s);
        if (!ok)
            return std::numeric_limits<double>::infinity();
        return plus_side ? project(z, th) - s : s - project(z, th);
    };
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = eval(x1), f2 = eval(x2);
    for (int it = 0; it < 40; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = eval(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = eval(x2);
        }
    }
    return std::min({best, f1, f2});
}

void record_violation(ContainmentReport& rep, Complex z, double slack) {
    rep.worst_violation = std::max(rep.worst_violation, -slack);
    ++rep.violation_count;
    if (rep.violating_samples.size() < 16)
        rep.violating_samples.push_back(z);
}

} // namespace

ContainmentReport containment_check(const SampleCloud& cloud,
                                    const RangeClassification& rc, double tol) {
    if (rc.kind == RangeKind::WholePlane)
        throw StructureError("containment_check: the whole plane contains everything; "
                             "nothing to check");
    ContainmentReport rep;
    rep.checked = cloud.points.size();
    rep.note = "sampling can refute containment but not prove it";

    switch (rc.kind) {
    case RangeKind::HyperbolicDisc:
    case RangeKind::BihyperbolicNested: {
        const Hyperbola& h = (rc.kind == RangeKind::HyperbolicDisc) ? *rc.disc : *rc.outer;
        for (const auto& [z, sign] : cloud.points) {
            const double m = hyperbola_membership(h, z);
            if (m < -tol)
                record_violation(rep, z, m);
        }
        break;
    }
    case RangeKind::BihyperbolicFlat: {
        HullSupport hull{{*rc.h_plus, *rc.h_minus}};
        for (const auto& [z, sign] : cloud.points) {
            const double s = hull_slack(hull, z, sign > 0);
            if (s < -tol)
                record_violation(rep, z, s);
        }
        break;
    }
    case RangeKind::DegenerateRays: {
        // the real line minus the open segment between the endpoints
        const double lo = std::min(rc.ray_endpoints[0].real(), rc.ray_endpoints[1].real());
        const double hi = std::max(rc.ray_endpoints[0].real(), rc.ray_endpoints[1].real());
        for (const auto& [z, sign] : cloud.points) {
            double viol = std::abs(z.imag());
            if (z.real() > lo && z.real() < hi)
                viol = std::max(viol, std::min(z.real() - lo, hi - z.real()));
            if (viol > tol)
                record_violation(rep, z, -viol);
        }
        break;
    }
    case RangeKind::RealLine: {
        for (const auto& [z, sign] : cloud.points)
            if (std::abs(z.imag()) > tol)
                record_violation(rep, z, -std::abs(z.imag()));
        break;
    }
    case RangeKind::Point: {
        for (const auto& [z, sign] : cloud.points)
            if (std::abs(z - rc.point_value) > tol)
                record_violation(rep, z, -std::abs(z - rc.point_value));
        break;
    }
    case RangeKind::NumericOnly: {
        rep.note = "numeric-only classification; containment check is not applicable "
                   "and passes vacuously";
        break;
    }
    case RangeKind::WholePlane:
        break; // unreachable
    }

    rep.verdict = rep.worst_violation <= tol;
    return rep;
}

double support_consistency(const CMatrix& a, const Metric& j,
                           const std::vector<double>& grid, std::size_t n_samples,
                           std::uint64_t seed) {
    std::vector<SupportData> valid;
    for (double th : grid) {
        const SupportData sd = support_bounds(a, j, th);
        if (sd.valid)
            valid.push_back(sd);
    }
    if (valid.empty())
        throw StructureError("support_consistency: no valid angle in the grid");

    const SampleCloud plus = sample_range(a, j, n_samples, +1, seed);
    const SampleCloud minus = sample_range(a, j, n_samples, -1, seed + 1);

    double worst = 0.0;
    for (const auto& sd : valid) {
        double plus_min = std::numeric_limits<double>::infinity();
        double plus_max = -std::numeric_limits<double>::infinity();
        for (const auto& [z, s] : plus.points) {
            const double g = project(z, sd.theta);
            plus_min = std::min(plus_min, g);
            plus_max = std::max(plus_max, g);
        }
        double minus_min = std::numeric_limits<double>::infinity();
        double minus_max = -std::numeric_limits<double>::infinity();
        for (const auto& [z, s] : minus.points) {
            const double g = project(z, sd.theta);
            minus_min = std::min(minus_min, g);
            minus_max = std::max(minus_max, g);
        }
        if (sd.plus_on_right) {
            // W_+ lives in [lambda_R, inf), -W_- in (-inf, lambda_L]
            worst = std::max(worst, std::abs(plus_min - sd.lambda_R));
            worst = std::max(worst, std::abs(minus_max - sd.lambda_L));
        } else {
            worst = std::max(worst, std::abs(plus_max - sd.lambda_L));
            worst = std::max(worst, std::abs(minus_min - sd.lambda_R));
        }
    }
    return worst;
}

double factor_check6_against(const TridiagonalSpec& spec, const CubicForm& f1,
                             const CubicForm& f2, int trials, std::uint64_t seed) {
    spec.validate();
    if (spec.order != 6)
        throw StructureError("factor_check6: order must be 6");
    const CMatrix a = spec.to_matrix();
    const Metric j = spec.metric();
    GaussianStream gauss(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const double u = gauss.next();
        const double v = gauss.next();
        const double w = gauss.next();
        const Complex lhs = curve_poly_eval(a, j, u, v, w);
        const Complex rhs = f1.eval(u, v, w) * f2.eval(u, v, w);
        const double denom = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
        worst = std::max(worst, std::abs(lhs - rhs) / denom);
    }
    return worst;
}

double factor_check6(const TridiagonalSpec& spec, int trials, std::uint64_t seed) {
    const Certificate6 cert = certify_order6(spec);
    return factor_check6_against(spec, cert.cubic_factors->first,
                                 cert.cubic_factors->second, trials, seed);
}

} // namespace knr
