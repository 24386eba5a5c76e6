#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "knr/eig.hpp"
#include "knr/krein.hpp"
#include "fixtures.hpp"

#include <algorithm>
#include <random>

using namespace knr;

namespace {

// multiset distance between computed eigenvalues and expected ones
double multiset_distance(std::vector<Complex> got, std::vector<Complex> want) {
    REQUIRE(got.size() == want.size());
    double worst = 0.0;
    for (const Complex& w : want) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < got.size(); ++i)
            if (std::abs(got[i] - w) < best_d) {
                best_d = std::abs(got[i] - w);
                best = i;
            }
        worst = std::max(worst, best_d);
        got.erase(got.begin() + best);
    }
    return worst;
}

double residual(const CMatrix& m, const EigenPair& p) {
    CVector r = m.apply(p.vector);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] -= p.value * p.vector[i];
    return vec_norm(r);
}

} // namespace

TEST_CASE("diagonal and exchange matrices") {
    CMatrix d(3);
    d(0, 0) = 3.0;
    d(1, 1) = -1.0;
    d(2, 2) = 2.0;
    CHECK(multiset_distance(eig_values(d), {Complex(3, 0), Complex(-1, 0), Complex(2, 0)}) <
          1e-12);

    const CMatrix x{{Complex(0, 0), Complex(1, 0)}, {Complex(1, 0), Complex(0, 0)}};
    CHECK(multiset_distance(eig_values(x), {Complex(1, 0), Complex(-1, 0)}) < 1e-12);
}

TEST_CASE("tridiagonal 3x3 fixture: eigenvalues 4 and the roots of 3-2i") {
    const CMatrix a = fixtures::hyperbolic3().to_matrix();
    const Complex root = std::sqrt(Complex(3.0, -2.0));
    CHECK(multiset_distance(eig_values(a), {Complex(4, 0), root, -root}) < 1e-9);
}

TEST_CASE("eigenpair residuals meet the tolerance bound (randomized, n <= 8)") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const CMatrix m = fixtures::random_matrix(rng, n, 2.0);
        const auto pairs = eig_dense(m, 1e-10);
        REQUIRE(pairs.size() == n);
        for (const auto& p : pairs) {
            CHECK(std::abs(vec_norm(p.vector) - 1.0) < 1e-12);
            CHECK(residual(m, p) <= 1e-10 * m.frobenius_norm());
            CHECK_FALSE(p.j_norm.has_value());
        }
    }
}

TEST_CASE("closed-form path agrees with the QR path for n <= 4") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const CMatrix m = fixtures::random_matrix(rng, n, 3.0);
        const auto fast = eig_values_closed_form(m);

        // force the iterative route by embedding into a padded 5x5 block
        CMatrix padded(5);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                padded(i, j) = m(i, j);
        for (std::size_t i = n; i < 5; ++i)
            padded(i, i) = 1000.0 + 17.0 * static_cast<double>(i);
        auto padded_vals = eig_values(padded);
        std::vector<Complex> slow;
        for (const Complex& v : padded_vals)
            if (v.real() < 500.0)
                slow.push_back(v);
        REQUIRE(slow.size() == n);
        CHECK(multiset_distance(fast, slow) < 1e-9 * std::max(1.0, m.frobenius_norm()));
    }
}

TEST_CASE("J-Hermitian spectra are closed under conjugation") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const Metric j = fixtures::random_indefinite_metric(rng, n);
        const CMatrix a = fixtures::random_matrix(rng, n, 2.0);
        const CMatrix h = a + j_adjoint(a, j);
        auto vals = eig_values(h);
        std::vector<Complex> conj_vals;
        for (const Complex& v : vals)
            conj_vals.push_back(std::conj(v));
        CHECK(multiset_distance(vals, conj_vals) < 1e-9 * std::max(1.0, h.frobenius_norm()));
    }
}

TEST_CASE("eigenvalue recovered from the indefinite Rayleigh quotient") {
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const Metric j = fixtures::random_indefinite_metric(rng, n);
        const CMatrix a = fixtures::random_matrix(rng, n, 2.0);
        const CMatrix h = a + j_adjoint(a, j);
        auto pairs = eig_dense(h, 1e-10);
        attach_j_norms(pairs, j);
        for (const auto& p : pairs) {
            const double jn = p.j_norm.value();
            if (std::abs(jn) < 1e-6)
                continue;
            const Complex quotient =
                indefinite_inner(h.apply(p.vector), p.vector, j) / Complex(jn, 0.0);
            CHECK(std::abs(quotient - p.value) <= 1e-9 * std::max(1.0, h.frobenius_norm()));
        }
    }
}

TEST_CASE("repeated eigenvalues get a usable eigenbasis") {
    CMatrix m(4);
    m(0, 0) = 2.0;
    m(1, 1) = 2.0;
    m(2, 2) = -1.0;
    m(3, 3) = 5.0;
    m(0, 2) = 0.7; // upper-triangular coupling keeps the double eigenvalue
    const auto pairs = eig_dense(m, 1e-10);
    int twos = 0;
    for (const auto& p : pairs)
        if (std::abs(p.value - Complex(2, 0)) < 1e-8)
            ++twos;
    CHECK(twos == 2);
    // the two vectors for the double eigenvalue must not be parallel
    std::vector<CVector> vecs;
    for (const auto& p : pairs)
        if (std::abs(p.value - Complex(2, 0)) < 1e-8)
            vecs.push_back(p.vector);
    const double overlap = std::abs(euclidean_inner(vecs[0], vecs[1]));
    CHECK(overlap < 0.99);
}

TEST_CASE("defective input still yields exact eigenvectors where they exist") {
    const CMatrix jordan{{Complex(0, 0), Complex(1, 0)}, {Complex(0, 0), Complex(0, 0)}};
    const auto pairs = eig_dense(jordan, 1e-10);
    for (const auto& p : pairs)
        CHECK(std::abs(p.value) < 1e-7);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pairs)
        best = std::min(best, residual(jordan, p));
    CHECK(best < 1e-10);
}

TEST_CASE("polynomial solvers survive scaling extremes") {
    // (z-1e6)(z-1e-6) = z^2 - (1e6 + 1e-6) z + 1
    auto r = poly::solve_quadratic(Complex(1, 0), Complex(-(1e6 + 1e-6), 0), Complex(1, 0));
    CHECK(multiset_distance(r, {Complex(1e6, 0), Complex(1e-6, 0)}) < 1e-12);

    // (z-2)(z-2)(z+3) = z^3 - z^2 - 8z + 12
    auto c = poly::solve_cubic_monic(Complex(-1, 0), Complex(-8, 0), Complex(12, 0));
    CHECK(multiset_distance(c, {Complex(2, 0), Complex(2, 0), Complex(-3, 0)}) < 1e-7);

    // (z^2+1)(z-1)(z+2) = z^4 + z^3 - z^2 + z - 2
    auto q = poly::solve_quartic_monic(Complex(1, 0), Complex(-1, 0), Complex(1, 0),
                                       Complex(-2, 0));
    CHECK(multiset_distance(q, {Complex(0, 1), Complex(0, -1), Complex(1, 0),
                                Complex(-2, 0)}) < 1e-9);
}

TEST_CASE("dimension and tolerance contract violations throw") {
    CHECK_THROWS_AS(eig_dense(CMatrix(17), 1e-10), StructureError);
    CHECK_THROWS_AS(eig_dense(CMatrix::identity(2), 0.0), StructureError);
    CHECK_THROWS_AS(eig_values_closed_form(CMatrix::identity(5)), StructureError);
}
