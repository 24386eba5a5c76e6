#pragma once

#include "knr/krein.hpp"
#include "knr/tridiagonal.hpp"
#include "knr/types.hpp"

#include <algorithm>
#include <random>

namespace fixtures {

using knr::Complex;
using knr::TridiagonalSpec;

// 3x3 with a hyperbolic range: eigenvalues 4 and the two square roots of 3-2i.
inline TridiagonalSpec hyperbolic3() {
    TridiagonalSpec s;
    s.order = 3;
    s.a = 4.0;
    s.b = {Complex(3.0, 1.0), Complex(1.0, 0.0)};
    s.c = {Complex(-4.0, 1.0), Complex(0.0, -1.0)};
    return s;
}

// centrosymmetric 5x5: eigenvalues 6, +-sqrt(30), +-sqrt(30+10i); range
// bounded by the outer of two nested hyperbolas.
inline TridiagonalSpec nested5() {
    TridiagonalSpec s;
    s.order = 5;
    s.a = 6.0;
    s.b = {Complex(-3.0, 0.0), Complex(5.0, 0.0), Complex(0.0, 1.0), Complex(2.0, 0.0)};
    s.c = {Complex(2.0, 0.0), Complex(0.0, 1.0), Complex(5.0, 0.0), Complex(-3.0, 0.0)};
    return s;
}

// centrosymmetric 4x4 with two nested hyperbolas: eigenvalues 1+-sqrt(23),
// -1+-sqrt(43); bounded by the outer hyperbola centered at (1,0).
inline TridiagonalSpec nested4() {
    TridiagonalSpec s;
    s.order = 4;
    s.a = 5.0;
    s.b = {Complex(1.0, 0.0), Complex(2.0, 0.0), Complex(7.0, 0.0)};
    s.c = {Complex(7.0, 0.0), Complex(2.0, 0.0), Complex(1.0, 0.0)};
    return s;
}

// centrosymmetric 4x4 whose two displaced hyperbolas are not nested: the
// boundary mixes arcs with flat bridges.
inline TridiagonalSpec flat4() {
    TridiagonalSpec s;
    s.order = 4;
    s.a = 6.0;
    s.b = {Complex(0.0, 1.0), Complex(2.0, 1.0), Complex(2.0, 0.0)};
    s.c = {Complex(2.0, 0.0), Complex(2.0, 1.0), Complex(0.0, 1.0)};
    return s;
}

// centrosymmetric 4x4 whose sign classes interlace: the range degenerates to
// the whole complex plane.
inline TridiagonalSpec plane4() {
    TridiagonalSpec s;
    s.order = 4;
    s.a = 1.0;
    s.b = {Complex(3.0, 0.0), Complex(5.0, 0.0), Complex(0.5, 0.0)};
    s.c = {Complex(0.5, 0.0), Complex(5.0, 0.0), Complex(3.0, 0.0)};
    return s;
}

// centrosymmetric 6x6 with b3 = 0: J-unitarily reducible, range bounded by
// the hyperbola with foci +-sqrt(29) and non-transverse axis 6*sqrt(2).
inline TridiagonalSpec reducible6() {
    TridiagonalSpec s;
    s.order = 6;
    s.a = 4.0;
    s.b = {Complex(1.0, 0.0), Complex(2.0, 0.0), Complex(0.0, 0.0), Complex(4.0, 0.0),
           Complex(5.0, 0.0)};
    s.c = {Complex(5.0, 0.0), Complex(4.0, 0.0), Complex(0.0, 0.0), Complex(2.0, 0.0),
           Complex(1.0, 0.0)};
    return s;
}

// same matrix with b3 = -2: the curve factors into two irreducible cubics.
inline TridiagonalSpec sextic6() {
    TridiagonalSpec s = reducible6();
    s.b[2] = Complex(-2.0, 0.0);
    s.c[2] = Complex(-2.0, 0.0);
    return s;
}

// --- randomized-case helpers (fixed seeds; deterministic suites) ---

inline knr::CMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    knr::CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = Complex(u(rng), u(rng));
    return m;
}

inline knr::Metric random_indefinite_metric(std::mt19937_64& rng, std::size_t n) {
    std::vector<int> signs(n, 1);
    std::uniform_int_distribution<std::size_t> pick(1, n - 1);
    const std::size_t minus = pick(rng);
    for (std::size_t i = 0; i < minus; ++i)
        signs[i] = -1;
    std::shuffle(signs.begin(), signs.end(), rng);
    return knr::Metric(signs);
}

// J-unitary built from diagonal phases, same-sign plane rotations and
// mixed-sign hyperbolic rotations (kept mild so conditioning stays tame).
inline knr::CMatrix random_j_unitary(std::mt19937_64& rng, const knr::Metric& j,
                                     int layers = 3, double strength = 0.4) {
    const std::size_t n = j.dim();
    std::uniform_real_distribution<double> angle(-3.14159, 3.14159);
    std::uniform_real_distribution<double> mag(-strength, strength);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);

    knr::CMatrix u = knr::CMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        u(i, i) = std::polar(1.0, angle(rng));

    for (int layer = 0; layer < layers; ++layer) {
        std::size_t i = pick(rng), k = pick(rng);
        if (i == k)
            continue;
        if (i > k)
            std::swap(i, k);
        knr::CMatrix g = knr::CMatrix::identity(n);
        const double t = mag(rng);
        const double phase = angle(rng);
        if (j.sign(i) == j.sign(k)) {
            // ordinary rotation on a same-sign pair commutes with J
            g(i, i) = std::cos(t);
            g(k, k) = std::cos(t);
            g(i, k) = std::polar(std::sin(t), phase);
            g(k, i) = -std::polar(std::sin(t), -phase);
        } else {
            g(i, i) = std::cosh(t);
            g(k, k) = std::cosh(t);
            g(i, k) = std::polar(std::sinh(t), phase);
            g(k, i) = std::polar(std::sinh(t), -phase);
        }
        u = u * g;
    }
    return u;
}

// Hermitian positive definite G G* + eps I.
inline knr::CMatrix random_posdef(std::mt19937_64& rng, std::size_t n) {
    const knr::CMatrix g = random_matrix(rng, n);
    knr::CMatrix p = g * g.adjoint();
    for (std::size_t i = 0; i < n; ++i)
        p(i, i) += 0.2;
    return p;
}

// J-Hermitian with real non-interlacing spectrum by construction: for P
// positive definite, J P has real eigenvalues and the eigenvector J-norm sign
// equals the eigenvalue sign.
inline knr::CMatrix random_definitizable(std::mt19937_64& rng, const knr::Metric& j) {
    return knr::metric_matrix(j) * random_posdef(rng, j.dim());
}

// A = J (P1 + i P2) with P1, P2 positive definite: H_theta(A) = J (P1 cos t +
// P2 sin t) stays definitizable throughout (0, pi/2), so plenty of support
// directions are valid.
inline knr::CMatrix random_classy(std::mt19937_64& rng, const knr::Metric& j) {
    const knr::CMatrix p1 = random_posdef(rng, j.dim());
    const knr::CMatrix p2 = random_posdef(rng, j.dim());
    return knr::metric_matrix(j) * (p1 + knr::Complex(0, 1) * p2);
}

inline TridiagonalSpec random_spec(std::mt19937_64& rng, std::size_t order,
                                   bool centrosymmetric, double scale = 2.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    TridiagonalSpec s;
    s.order = order;
    s.a = std::abs(u(rng)) + 0.3;
    s.b.resize(order - 1);
    s.c.resize(order - 1);
    for (std::size_t j = 0; j < order - 1; ++j) {
        s.b[j] = Complex(u(rng), u(rng));
        s.c[j] = Complex(u(rng), u(rng));
    }
    if (centrosymmetric)
        for (std::size_t j = 0; j < order - 1; ++j)
            s.c[j] = s.b[order - 2 - j];
    return s;
}

} // namespace fixtures
