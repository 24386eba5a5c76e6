#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "knr/sampling.hpp"
#include "knr/spectral.hpp"
#include "fixtures.hpp"

#include <cmath>
#include <numbers>

using namespace knr;

namespace {

CubicForm cubic_from_real(double u3, double u2v, double u2w, double uv2, double uvw,
                          double uw2, double v3, double v2w, double vw2, double w3) {
    CubicForm f;
    f.coef = {Complex(u3, 0),  Complex(u2v, 0), Complex(u2w, 0), Complex(uv2, 0),
              Complex(uvw, 0), Complex(uw2, 0), Complex(v3, 0),  Complex(v2w, 0),
              Complex(vw2, 0), Complex(w3, 0)};
    return f;
}

} // namespace

TEST_CASE("sampling is deterministic in the seed") {
    const auto spec = fixtures::hyperbolic3();
    const CMatrix a = spec.to_matrix();
    const Metric j = spec.metric();
    const SampleCloud c1 = sample_range(a, j, 500, +1, 7);
    const SampleCloud c2 = sample_range(a, j, 500, +1, 7);
    REQUIRE(c1.points.size() == c2.points.size());
    for (std::size_t i = 0; i < c1.points.size(); ++i)
        CHECK(c1.points[i].first == c2.points[i].first);
    const SampleCloud c3 = sample_range(a, j, 500, +1, 8);
    bool all_same = c1.points.size() == c3.points.size();
    if (all_same)
        for (std::size_t i = 0; i < c1.points.size(); ++i)
            all_same = all_same && c1.points[i].first == c3.points[i].first;
    CHECK_FALSE(all_same);
}

TEST_CASE("identity and scalar matrices sample to a single point") {
    // exact scaling to [x,x]_J = +-1 forces [Ix,x]_J onto +-1 exactly
    const Metric j({1, -1, 1});
    for (int sign : {+1, -1}) {
        const SampleCloud cloud = sample_range(CMatrix::identity(3), j, 2000, sign, 42);
        for (const auto& [z, s] : cloud.points)
            CHECK(std::abs(z - Complex(1, 0)) <= 1e-12);
    }
    CMatrix alpha = CMatrix::identity(3);
    alpha *= Complex(0.7, -1.3);
    for (int sign : {+1, -1}) {
        const SampleCloud cloud = sample_range(alpha, j, 2000, sign, 43);
        for (const auto& [z, s] : cloud.points)
            CHECK(std::abs(z - Complex(0.7, -1.3)) <= 1e-11);
    }
}

TEST_CASE("clouds of diag(2,-3) land on the two half-rays") {
    const Metric j({1, -1});
    CMatrix d(2);
    d(0, 0) = 2.0;
    d(1, 1) = -3.0;
    const SampleCloud plus = sample_range(d, j, 20000, +1, 11);
    for (const auto& [z, s] : plus.points) {
        CHECK(std::abs(z.imag()) <= 1e-10 * std::max(1.0, std::abs(z)));
        CHECK(z.real() >= 2.0 - 1e-10);
    }
    const SampleCloud minus = sample_range(d, j, 20000, -1, 12);
    for (const auto& [z, s] : minus.points) {
        CHECK(std::abs(z.imag()) <= 1e-10 * std::max(1.0, std::abs(z)));
        CHECK(z.real() <= -3.0 + 1e-10);
    }
}

TEST_CASE("empty sign classes are rejected") {
    CHECK_THROWS_AS(sample_range(CMatrix::identity(2), Metric::euclidean(2), 10, -1, 1),
                    StructureError);
}

TEST_CASE("containment of the certified 3x3 disc at 1e5 samples") {
    const auto spec = fixtures::hyperbolic3();
    const CMatrix a = spec.to_matrix();
    const Metric j = spec.metric();
    const RangeClassification rc = classify_range(a, j, 360);
    REQUIRE(rc.kind == RangeKind::HyperbolicDisc);

    SampleCloud cloud = sample_range(a, j, 100000, +1, 42);
    const SampleCloud minus = sample_range(a, j, 100000, -1, 43);
    cloud.points.insert(cloud.points.end(), minus.points.begin(), minus.points.end());

    const auto report = containment_check(cloud, rc, 1e-6);
    CHECK(report.verdict);
    CHECK(report.worst_violation <= 1e-6);
}

TEST_CASE("containment flags a deliberately wrong hyperbola") {
    const auto spec = fixtures::hyperbolic3();
    const CMatrix a = spec.to_matrix();
    const Metric j = spec.metric();
    RangeClassification rc = classify_range(a, j, 360);
    REQUIRE(rc.kind == RangeKind::HyperbolicDisc);

    SampleCloud cloud = sample_range(a, j, 20000, +1, 5);
    const SampleCloud minus = sample_range(a, j, 20000, -1, 6);
    cloud.points.insert(cloud.points.end(), minus.points.begin(), minus.points.end());

    // pushing the vertices outward shrinks the branch regions, so honest
    // samples must spill out (note: shrinking BOTH semi-axes would enlarge
    // the regions instead and catch nothing)
    RangeClassification shrunk = rc;
    shrunk.disc = Hyperbola::from_axes(rc.disc->center, rc.disc->gamma,
                                       1.1 * rc.disc->semi_transverse,
                                       rc.disc->semi_nontransverse);
    const auto report = containment_check(cloud, shrunk, 1e-6);
    CHECK_FALSE(report.verdict);
    CHECK(report.violation_count > 0);

    // off-center control
    RangeClassification offset = rc;
    offset.disc = Hyperbola::from_axes(rc.disc->center + Complex(0.3, 0.2), rc.disc->gamma,
                                       rc.disc->semi_transverse, rc.disc->semi_nontransverse);
    CHECK_FALSE(containment_check(cloud, offset, 1e-6).verdict);
}

TEST_CASE("containment of the nested 4x4 and flat 4x4 fixtures") {
    {
        const auto spec = fixtures::nested4();
        const CMatrix a = spec.to_matrix();
        const Metric j = spec.metric();
        const RangeClassification rc = classify_range(a, j, 360);
        REQUIRE(rc.kind == RangeKind::BihyperbolicNested);
        SampleCloud cloud = sample_range(a, j, 50000, +1, 21);
        const SampleCloud minus = sample_range(a, j, 50000, -1, 22);
        cloud.points.insert(cloud.points.end(), minus.points.begin(), minus.points.end());
        const auto report = containment_check(cloud, rc, 1e-6);
        CHECK(report.verdict);
    }
    {
        const auto spec = fixtures::flat4();
        const CMatrix a = spec.to_matrix();
        const Metric j = spec.metric();
        const RangeClassification rc = classify_range(a, j, 360);
        REQUIRE(rc.kind == RangeKind::BihyperbolicFlat);
        SampleCloud cloud = sample_range(a, j, 8000, +1, 31);
        const SampleCloud minus = sample_range(a, j, 8000, -1, 32);
        cloud.points.insert(cloud.points.end(), minus.points.begin(), minus.points.end());
        const auto report = containment_check(cloud, rc, 1e-6);
        CHECK(report.verdict);
    }
}

TEST_CASE("same-sign midpoints stay inside the classified region") {
    const auto spec = fixtures::hyperbolic3();
    const CMatrix a = spec.to_matrix();
    const Metric j = spec.metric();
    const RangeClassification rc = classify_range(a, j, 360);
    REQUIRE(rc.kind == RangeKind::HyperbolicDisc);
    for (int sign : {+1, -1}) {
        const SampleCloud cloud = sample_range(a, j, 4000, sign, 55 + sign);
        SampleCloud midpoints;
        midpoints.sign = sign;
        for (std::size_t i = 0; i + 1 < cloud.points.size(); i += 2)
            midpoints.points.emplace_back(
                0.5 * (cloud.points[i].first + cloud.points[i + 1].first), sign);
        const auto report = containment_check(midpoints, rc, 1e-6);
        CHECK(report.verdict);
    }
}

TEST_CASE("support consistency on the diagonal 2x2") {
    const Metric j({1, -1});
    CMatrix d(2);
    d(0, 0) = 2.0;
    d(1, 1) = -3.0;
    const double worst = support_consistency(d, j, {0.0}, 100000, 42);
    CHECK(worst <= 1e-3);
}

TEST_CASE("support consistency across the 3x3 fixture's window") {
    const auto spec = fixtures::hyperbolic3();
    const CMatrix a = spec.to_matrix();
    const Metric j = spec.metric();
    const ThetaWindow w = omega_window(a, j, 360);
    REQUIRE_FALSE(w.empty);
    const double worst = support_consistency(a, j, window_grid(w, 21, 0.05), 100000, 42);
    CHECK(worst <= 1e-3);
}

TEST_CASE("support consistency needs at least one valid angle") {
    const auto spec = fixtures::plane4();
    std::vector<double> grid;
    for (int k = 0; k < 16; ++k)
        grid.push_back(2.0 * std::numbers::pi * k / 16);
    CHECK_THROWS_AS(support_consistency(spec.to_matrix(), spec.metric(), grid, 100, 1),
                    StructureError);
}

TEST_CASE("order-6 factorization against the block cubics") {
    CHECK(factor_check6(fixtures::reducible6(), 100) <= 1e-10);
    CHECK(factor_check6(fixtures::sextic6(), 100) <= 1e-10);
}

TEST_CASE("order-6 factorization against the explicit irreducible cubics") {
    // w^3 - 68 u^3 - 11 u^2 w + 3u(30 v^2 + 2 w^2) + 18 v^2 w and
    // w^3 - 20 u^3 - 11 u^2 w + 2u(27 v^2 +  w^2) + 18 v^2 w
    const CubicForm p1 = cubic_from_real(-68, 0, -11, 90, 0, 6, 0, 18, 0, 1);
    const CubicForm p2 = cubic_from_real(-20, 0, -11, 54, 0, 2, 0, 18, 0, 1);
    CHECK(factor_check6_against(fixtures::sextic6(), p1, p2, 100) <= 1e-8);

    // the certificate's own factors must match the explicit ones coefficientwise
    const auto cert = certify_order6(fixtures::sextic6());
    REQUIRE(cert.cubic_factors.has_value());
    const auto& [f1, f2] = *cert.cubic_factors;
    auto matches = [](const CubicForm& a, const CubicForm& b) {
        double worst = 0.0;
        for (std::size_t i = 0; i < a.coef.size(); ++i)
            worst = std::max(worst, std::abs(a.coef[i] - b.coef[i]));
        return worst;
    };
    const double direct = std::max(matches(f1, p1), matches(f2, p2));
    const double crossed = std::max(matches(f1, p2), matches(f2, p1));
    CHECK(std::min(direct, crossed) < 1e-10);
}

TEST_CASE("reducible order-6 factor carries the linear piece w + a u") {
    const auto cert = certify_order6(fixtures::reducible6());
    REQUIRE(cert.cubic_factors.has_value());
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const double uu = u(rng), vv = u(rng);
        const Complex at_root = cert.cubic_factors->first.eval(uu, vv, -4.0 * uu);
        CHECK(std::abs(at_root) <= 1e-10 * std::max(1.0, cert.cubic_factors->first.max_coef()));
    }
}

TEST_CASE("diagonal order-6 curve splits into linear factors") {
    TridiagonalSpec diag;
    diag.order = 6;
    diag.a = 1.5;
    diag.b.assign(5, Complex(0, 0));
    diag.c.assign(5, Complex(0, 0));
    const CMatrix a = diag.to_matrix();
    const Metric j = diag.metric();
    std::mt19937_64 rng(88);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const double uu = u(rng), vv = u(rng), ww = u(rng);
        const Complex whole = curve_poly_eval(a, j, uu, vv, ww);
        const Complex expect = std::pow(Complex(ww + 1.5 * uu, 0), 4.0) *
                               std::pow(Complex(ww - 1.5 * uu, 0), 2.0);
        CHECK(std::abs(whole - expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
    }
}

TEST_CASE("cloud clipping bookkeeping stays consistent") {
    // the flat fixture has unbounded components, so some samples fly far out
    const auto spec = fixtures::flat4();
    const SampleCloud cloud = sample_range(spec.to_matrix(), spec.metric(), 20000, +1, 99);
    CHECK(cloud.points.size() + cloud.clipped == cloud.count);
}
