#include "knr/eig.hpp"

#include "knr/krein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace knr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Givens {
    double c;  // real
    Complex s; // so that G = [[c, s], [-conj(s), c]] maps (f,g) -> (r,0)
};

Givens make_givens(Complex f, Complex g) {
    const double af = std::abs(f);
    const double ag = std::abs(g);
    if (ag == 0.0)
        return {1.0, Complex(0.0, 0.0)};
    if (af == 0.0)
        return {0.0, std::conj(g) / ag};
    const double d = std::hypot(af, ag);
    const Complex phase = f / af;
    return {af / d, phase * std::conj(g) / d};
}

// Householder reduction to upper Hessenberg form, accumulating the unitary Q
// with A = Q H Q*.
void hessenberg(CMatrix& a, CMatrix& q) {
    const std::size_t n = a.dim();
    q = CMatrix::identity(n);
    if (n < 3)
        return;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double colnorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i)
            colnorm += std::norm(a(i, k));
        colnorm = std::sqrt(colnorm);
        if (colnorm <= kEps * a.max_abs())
            continue;

        CVector v(n, Complex(0.0, 0.0));
        for (std::size_t i = k + 1; i < n; ++i)
            v[i] = a(i, k);
        const Complex x0 = v[k + 1];
        const Complex phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : Complex(1.0, 0.0);
        v[k + 1] += phase * colnorm;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i)
            vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0)
            continue;
        const double beta = 2.0 / vnorm2;

        // A <- (I - beta v v*) A
        for (std::size_t j = 0; j < n; ++j) {
            Complex dot = 0.0;
            for (std::size_t i = k + 1; i < n; ++i)
                dot += std::conj(v[i]) * a(i, j);
            dot *= beta;
            for (std::size_t i = k + 1; i < n; ++i)
                a(i, j) -= dot * v[i];
        }
        // A <- A (I - beta v v*)
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot = 0.0;
            for (std::size_t j = k + 1; j < n; ++j)
                dot += a(i, j) * v[j];
            dot *= beta;
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) -= dot * std::conj(v[j]);
        }
        // Q <- Q (I - beta v v*)
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot = 0.0;
            for (std::size_t j = k + 1; j < n; ++j)
                dot += q(i, j) * v[j];
            dot *= beta;
            for (std::size_t j = k + 1; j < n; ++j)
                q(i, j) -= dot * std::conj(v[j]);
        }
    }
}

// Eigenvalue of [[a,b],[c,d]] closest to d.
Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
    const Complex tr = a + d;
    const Complex det = a * d - b * c;
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    const Complex l1 = 0.5 * (tr + disc);
    const Complex l2 = 0.5 * (tr - disc);
    return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

// Explicit single-shift QR iteration on an upper Hessenberg matrix, driving it
// to upper triangular (Schur) form. Rotations are accumulated into q so that
// original = q t q* throughout.
void schur_qr(CMatrix& t, CMatrix& q) {
    const std::size_t n = t.dim();
    const double scale = std::max(t.max_abs(), 1e-300);
    std::size_t hi = n; // one past the active block
    std::size_t iter_this_block = 0;
    std::size_t total_iters = 0;
    const std::size_t iter_cap_per_eig = 60;

    auto subdiag_small = [&](std::size_t i) {
        const double thresh =
            kEps * (std::abs(t(i, i)) + std::abs(t(i + 1, i + 1))) + 1e-300;
        return std::abs(t(i + 1, i)) <= std::max(thresh, kEps * scale * 1e-2);
    };

    while (hi > 1) {
        // Deflate converged trailing eigenvalues.
        bool deflated = true;
        while (hi > 1 && deflated) {
            deflated = false;
            if (subdiag_small(hi - 2)) {
                t(hi - 1, hi - 2) = 0.0;
                --hi;
                iter_this_block = 0;
                deflated = true;
            }
        }
        if (hi <= 1)
            break;

        // Locate the irreducible block [lo, hi).
        std::size_t lo = hi - 1;
        while (lo > 0 && !subdiag_small(lo - 1))
            --lo;
        if (lo > 0)
            t(lo, lo - 1) = 0.0;

        if (iter_this_block >= iter_cap_per_eig)
            throw ConvergenceError(
                "eig_dense: QR iteration failed to converge after " +
                std::to_string(total_iters) + " sweeps on matrix\n" + format_matrix(t));

        Complex mu;
        if (iter_this_block > 0 && iter_this_block % 12 == 0) {
            // Exceptional shift to break symmetry-induced cycling.
            mu = t(hi - 1, hi - 1) + Complex(1.5 * std::abs(t(hi - 1, hi - 2)), 0.0);
        } else {
            mu = wilkinson_shift(t(hi - 2, hi - 2), t(hi - 2, hi - 1), t(hi - 1, hi - 2),
                                 t(hi - 1, hi - 1));
        }
        ++iter_this_block;
        ++total_iters;

        // QR factor the shifted block with Givens rotations, row by row.
        const std::size_t m = hi - lo;
        std::vector<Givens> rots(m - 1);
        // Work on the full rows so the similarity transform stays exact.
        // Left pass: T <- G_{k}^* ... applied to rows (shifted implicitly).
        // We materialize the shift only on the active window's diagonal.
        for (std::size_t i = lo; i < hi; ++i)
            t(i, i) -= mu;
        for (std::size_t k = lo; k + 1 < hi; ++k) {
            const Givens g = make_givens(t(k, k), t(k + 1, k));
            rots[k - lo] = g;
            for (std::size_t j = k; j < n; ++j) {
                const Complex x = t(k, j);
                const Complex y = t(k + 1, j);
                t(k, j) = g.c * x + g.s * y;
                t(k + 1, j) = -std::conj(g.s) * x + g.c * y;
            }
        }
        // Right pass: T <- T G_k^*, Q <- Q G_k^*.
        for (std::size_t k = lo; k + 1 < hi; ++k) {
            const Givens g = rots[k - lo];
            const std::size_t top = std::min(k + 2, hi);
            for (std::size_t i = 0; i < top; ++i) {
                const Complex x = t(i, k);
                const Complex y = t(i, k + 1);
                t(i, k) = g.c * x + std::conj(g.s) * y;
                t(i, k + 1) = -g.s * x + g.c * y;
            }
            for (std::size_t i = 0; i < n; ++i) {
                const Complex x = q(i, k);
                const Complex y = q(i, k + 1);
                q(i, k) = g.c * x + std::conj(g.s) * y;
                q(i, k + 1) = -g.s * x + g.c * y;
            }
        }
        for (std::size_t i = lo; i < hi; ++i)
            t(i, i) += mu;
    }

    // Clean the strictly-lower part (numerically zero after convergence).
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j + 1 <= i && j < n; ++j)
            if (i > j)
                t(i, j) = 0.0;
}

// Eigenvector of the upper-triangular t for the eigenvalue at diagonal slot k,
// by guarded back-substitution.
CVector triangular_eigenvector(const CMatrix& t, std::size_t k) {
    const std::size_t n = t.dim();
    const double smallnum = kEps * std::max(1.0, t.max_abs());
    CVector y(n, Complex(0.0, 0.0));
    y[k] = 1.0;
    const Complex lambda = t(k, k);
    for (std::size_t jj = k; jj-- > 0;) {
        Complex rhs = 0.0;
        for (std::size_t l = jj + 1; l <= k; ++l)
            rhs += t(jj, l) * y[l];
        Complex d = t(jj, jj) - lambda;
        if (std::abs(d) < smallnum)
            d = Complex(smallnum, 0.0);
        y[jj] = -rhs / d;
    }
    const double nrm = vec_norm(y);
    if (nrm > 0.0)
        vec_scale(y, 1.0 / nrm);
    return y;
}

// Solve (M - sigma I) x = b by LU with partial pivoting; near-zero pivots are
// perturbed, which is exactly what inverse iteration wants.
CVector shifted_solve(const CMatrix& m, Complex sigma, const CVector& b) {
    const std::size_t n = m.dim();
    CMatrix a = m;
    for (std::size_t i = 0; i < n; ++i)
        a(i, i) -= sigma;
    CVector x = b;
    const double tiny = kEps * std::max(1.0, m.max_abs());
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i)
        perm[i] = i;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a(col, col));
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(a(i, col)) > best) {
                best = std::abs(a(i, col));
                piv = i;
            }
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(col, j), a(piv, j));
            std::swap(x[col], x[piv]);
        }
        if (std::abs(a(col, col)) < tiny)
            a(col, col) = Complex(tiny, 0.0);
        for (std::size_t i = col + 1; i < n; ++i) {
            const Complex f = a(i, col) / a(col, col);
            if (f == Complex(0.0, 0.0))
                continue;
            a(i, col) = 0.0;
            for (std::size_t j = col + 1; j < n; ++j)
                a(i, j) -= f * a(col, j);
            x[i] -= f * x[col];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        Complex s = x[i];
        for (std::size_t j = i + 1; j < n; ++j)
            s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

double pair_residual(const CMatrix& m, const EigenPair& p) {
    CVector r = m.apply(p.vector);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] -= p.value * p.vector[i];
    return vec_norm(r);
}

// Two rounds of inverse iteration on the original matrix; keeps whichever
// vector has the smaller residual.
void polish(const CMatrix& m, EigenPair& p) {
    double best = pair_residual(m, p);
    CVector v = p.vector;
    for (int round = 0; round < 2; ++round) {
        CVector w = shifted_solve(m, p.value, v);
        const double nw = vec_norm(w);
        if (!(nw > 0.0) || !std::isfinite(nw))
            break;
        vec_scale(w, 1.0 / nw);
        EigenPair cand{p.value, w, std::nullopt};
        const double res = pair_residual(m, cand);
        if (res < best) {
            best = res;
            p.vector = w;
        }
        v = w;
    }
}

// Characteristic polynomial coefficients (monic, powers ascending) for n <= 4
// via principal-minor sums.
std::vector<Complex> char_poly_small(const CMatrix& a) {
    const std::size_t n = a.dim();
    auto minor_det = [&](const std::vector<std::size_t>& idx) {
        const std::size_t k = idx.size();
        if (k == 1)
            return a(idx[0], idx[0]);
        if (k == 2)
            return a(idx[0], idx[0]) * a(idx[1], idx[1]) - a(idx[0], idx[1]) * a(idx[1], idx[0]);
        if (k == 3) {
            Complex d = 0.0;
            d += a(idx[0], idx[0]) *
                 (a(idx[1], idx[1]) * a(idx[2], idx[2]) - a(idx[1], idx[2]) * a(idx[2], idx[1]));
            d -= a(idx[0], idx[1]) *
                 (a(idx[1], idx[0]) * a(idx[2], idx[2]) - a(idx[1], idx[2]) * a(idx[2], idx[0]));
            d += a(idx[0], idx[2]) *
                 (a(idx[1], idx[0]) * a(idx[2], idx[1]) - a(idx[1], idx[1]) * a(idx[2], idx[0]));
            return d;
        }
        // k == 4: expand along the first row.
        Complex d = 0.0;
        double sgn = 1.0;
        for (std::size_t c = 0; c < 4; ++c) {
            std::vector<std::size_t> rows{idx[1], idx[2], idx[3]};
            std::vector<std::size_t> cols;
            for (std::size_t cc = 0; cc < 4; ++cc)
                if (cc != c)
                    cols.push_back(idx[cc]);
            Complex sub = 0.0;
            // 3x3 with explicit row/col index sets
            sub += a(rows[0], cols[0]) *
                   (a(rows[1], cols[1]) * a(rows[2], cols[2]) - a(rows[1], cols[2]) * a(rows[2], cols[1]));
            sub -= a(rows[0], cols[1]) *
                   (a(rows[1], cols[0]) * a(rows[2], cols[2]) - a(rows[1], cols[2]) * a(rows[2], cols[0]));
            sub += a(rows[0], cols[2]) *
                   (a(rows[1], cols[0]) * a(rows[2], cols[1]) - a(rows[1], cols[1]) * a(rows[2], cols[0]));
            d += sgn * a(idx[0], idx[c]) * sub;
            sgn = -sgn;
        }
        return d;
    };

    // Elementary symmetric functions e_k = sum of k x k principal minors.
    std::vector<Complex> e(n + 1, Complex(0.0, 0.0));
    e[0] = 1.0;
    std::vector<std::size_t> idx;
    // enumerate index subsets of each size (n <= 4 so brute force is fine)
    for (std::size_t mask = 1; mask < (1u << n); ++mask) {
        idx.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i))
                idx.push_back(i);
        e[idx.size()] += minor_det(idx);
    }
    // det(zI - A) = z^n - e1 z^{n-1} + e2 z^{n-2} - ...
    std::vector<Complex> coeff(n + 1);
    coeff[n] = 1.0;
    double sgn = -1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        coeff[n - k] = sgn * e[k];
        sgn = -sgn;
    }
    return coeff;
}

Complex poly_eval(const std::vector<Complex>& c, Complex z) {
    Complex v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;)
        v = v * z + c[k];
    return v;
}

Complex poly_deriv_eval(const std::vector<Complex>& c, Complex z) {
    Complex v = 0.0;
    for (std::size_t k = c.size(); k-- > 1;)
        v = v * z + static_cast<double>(k) * c[k];
    return v;
}

void newton_polish_roots(const std::vector<Complex>& coeff, std::vector<Complex>& roots) {
    for (auto& r : roots) {
        for (int it = 0; it < 3; ++it) {
            const Complex f = poly_eval(coeff, r);
            const Complex df = poly_deriv_eval(coeff, r);
            if (std::abs(df) == 0.0)
                break;
            const Complex step = f / df;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
                break;
            r -= step;
        }
    }
}

// Null-space basis of (M - lambda I) via complete-pivot elimination.
std::vector<CVector> null_space(const CMatrix& m, Complex lambda, double rank_tol) {
    const std::size_t n = m.dim();
    CMatrix a = m;
    for (std::size_t i = 0; i < n; ++i)
        a(i, i) -= lambda;

    std::vector<std::size_t> col_of(n);
    for (std::size_t j = 0; j < n; ++j)
        col_of[j] = j;
    const double scale = std::max(a.max_abs(), 1e-300);
    std::size_t rank = 0;
    for (std::size_t step = 0; step < n; ++step) {
        // complete pivot over the trailing block
        double best = 0.0;
        std::size_t pi = step, pj = step;
        for (std::size_t i = step; i < n; ++i)
            for (std::size_t j = step; j < n; ++j)
                if (std::abs(a(i, j)) > best) {
                    best = std::abs(a(i, j));
                    pi = i;
                    pj = j;
                }
        if (best <= rank_tol * scale)
            break;
        if (pi != step)
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(step, j), a(pi, j));
        if (pj != step) {
            for (std::size_t i = 0; i < n; ++i)
                std::swap(a(i, step), a(i, pj));
            std::swap(col_of[step], col_of[pj]);
        }
        for (std::size_t i = step + 1; i < n; ++i) {
            const Complex f = a(i, step) / a(step, step);
            if (f == Complex(0.0, 0.0))
                continue;
            a(i, step) = 0.0;
            for (std::size_t j = step + 1; j < n; ++j)
                a(i, j) -= f * a(step, j);
        }
        ++rank;
    }

    std::vector<CVector> basis;
    for (std::size_t free_col = rank; free_col < n; ++free_col) {
        CVector y(n, Complex(0.0, 0.0));
        y[free_col] = 1.0;
        for (std::size_t i = rank; i-- > 0;) {
            Complex rhs = 0.0;
            for (std::size_t j = i + 1; j < n; ++j)
                rhs += a(i, j) * y[j];
            y[i] = -rhs / a(i, i);
        }
        CVector v(n, Complex(0.0, 0.0));
        for (std::size_t j = 0; j < n; ++j)
            v[col_of[j]] = y[j];
        const double nrm = vec_norm(v);
        if (nrm > 0.0)
            vec_scale(v, 1.0 / nrm);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<EigenPair> eig_qr_path(const CMatrix& m, double tol) {
    CMatrix t = m;
    CMatrix q;
    hessenberg(t, q);
    schur_qr(t, q);
    const std::size_t n = m.dim();
    std::vector<EigenPair> pairs(n);
    for (std::size_t k = 0; k < n; ++k) {
        const CVector y = triangular_eigenvector(t, k);
        CVector v = q.apply(y);
        const double nrm = vec_norm(v);
        if (nrm > 0.0)
            vec_scale(v, 1.0 / nrm);
        pairs[k] = EigenPair{t(k, k), std::move(v), std::nullopt};
        polish(m, pairs[k]);
    }
    (void)tol;
    return pairs;
}

std::vector<EigenPair> eig_closed_form_path(const CMatrix& m) {
    const std::size_t n = m.dim();
    std::vector<Complex> roots = eig_values_closed_form(m);

    // Group numerically equal roots so repeated eigenvalues share a null-space
    // basis instead of all getting the same vector.
    const double cluster_tol = 1e-8 * std::max(1.0, m.max_abs());
    std::vector<EigenPair> pairs;
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i])
            continue;
        std::vector<std::size_t> cluster{i};
        used[i] = true;
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (!used[j] && std::abs(roots[j] - roots[i]) <= cluster_tol) {
                cluster.push_back(j);
                used[j] = true;
            }
        Complex mean = 0.0;
        for (auto idx : cluster)
            mean += roots[idx];
        mean /= static_cast<double>(cluster.size());
        auto basis = null_space(m, mean, 1e-9);
        if (basis.empty())
            basis = null_space(m, mean, 1e-6);
        for (std::size_t c = 0; c < cluster.size(); ++c) {
            CVector v = basis.empty() ? CVector(n, Complex(0.0, 0.0))
                                      : basis[std::min(c, basis.size() - 1)];
            if (basis.empty())
                v[0] = 1.0;
            pairs.push_back(EigenPair{roots[cluster[c]], std::move(v), std::nullopt});
        }
    }
    for (auto& p : pairs)
        polish(m, p);
    return pairs;
}

} // namespace

namespace poly {

std::vector<Complex> solve_quadratic(Complex a, Complex b, Complex c) {
    const Complex disc = std::sqrt(b * b - 4.0 * a * c);
    // pick the sign that avoids cancellation in -b -/+ disc
    const Complex u = (std::norm(b - disc) > std::norm(b + disc)) ? (b - disc) : (b + disc);
    if (std::abs(u) == 0.0)
        return {Complex(0.0, 0.0), Complex(0.0, 0.0)};
    const Complex q = -0.5 * u;
    return {q / a, c / q};
}

std::vector<Complex> solve_cubic_monic(Complex a2, Complex a1, Complex a0) {
    // depress: z = t - a2/3
    const Complex shift = a2 / 3.0;
    const Complex p = a1 - a2 * a2 / 3.0;
    const Complex q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
    std::vector<Complex> roots;
    const Complex disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    Complex u3 = -q / 2.0 + disc;
    if (std::abs(u3) < std::abs(-q / 2.0 - disc))
        u3 = -q / 2.0 - disc;
    if (std::abs(u3) == 0.0) {
        // triple root of the depressed cubic (p == q == 0 up to rounding)
        roots.assign(3, -shift);
    } else {
        const Complex u = std::pow(u3, 1.0 / 3.0);
        const Complex omega(-0.5, std::sqrt(3.0) / 2.0);
        Complex uk = u;
        for (int k = 0; k < 3; ++k) {
            roots.push_back(uk - p / (3.0 * uk) - shift);
            uk *= omega;
        }
    }
    std::vector<Complex> coeff{a0, a1, a2, Complex(1.0, 0.0)};
    newton_polish_roots(coeff, roots);
    return roots;
}

std::vector<Complex> solve_quartic_monic(Complex a3, Complex a2, Complex a1, Complex a0) {
    // depress: z = y - a3/4
    const Complex sh = a3 / 4.0;
    const Complex p = a2 - 3.0 * a3 * a3 / 8.0;
    const Complex q = a1 - a3 * a2 / 2.0 + a3 * a3 * a3 / 8.0;
    const Complex r = a0 - a3 * a1 / 4.0 + a3 * a3 * a2 / 16.0 - 3.0 * a3 * a3 * a3 * a3 / 256.0;

    std::vector<Complex> ys;
    if (std::abs(q) <= 1e-14 * (1.0 + std::abs(p) + std::abs(r))) {
        // biquadratic
        auto zs = solve_quadratic(Complex(1.0, 0.0), p, r);
        for (const Complex& z : zs) {
            const Complex s = std::sqrt(z);
            ys.push_back(s);
            ys.push_back(-s);
        }
    } else {
        // Ferrari: resolvent cubic z^3 - p z^2 - 4 r z + (4 p r - q^2) = 0
        auto zs = solve_cubic_monic(-p, -4.0 * r, 4.0 * p * r - q * q);
        // pick the resolvent root that makes z - p largest in magnitude
        Complex z = zs[0];
        for (const Complex& cand : zs)
            if (std::abs(cand - p) > std::abs(z - p))
                z = cand;
        const Complex w = std::sqrt(z - p);
        const Complex half_z = z / 2.0;
        // y^4 + p y^2 + q y + r = (y^2 + z/2)^2 - (w y - q/(2w))^2
        //                       = (y^2 + w y + z/2 - q/(2w)) (y^2 - w y + z/2 + q/(2w))
        const Complex qq = q / (2.0 * w);
        auto r1 = solve_quadratic(Complex(1.0, 0.0), w, half_z - qq);
        auto r2 = solve_quadratic(Complex(1.0, 0.0), -w, half_z + qq);
        ys.insert(ys.end(), r1.begin(), r1.end());
        ys.insert(ys.end(), r2.begin(), r2.end());
    }
    std::vector<Complex> roots;
    for (const Complex& y : ys)
        roots.push_back(y - sh);
    std::vector<Complex> coeff{a0, a1, a2, a3, Complex(1.0, 0.0)};
    newton_polish_roots(coeff, roots);
    return roots;
}

} // namespace poly

std::vector<Complex> eig_values_closed_form(const CMatrix& m) {
    const std::size_t n = m.dim();
    if (n == 0 || n > 4)
        throw StructureError("closed-form eigenvalues require 1 <= n <= 4");
    const auto c = char_poly_small(m);
    switch (n) {
    case 1:
        return {m(0, 0)};
    case 2:
        return poly::solve_quadratic(c[2], c[1], c[0]);
    case 3:
        return poly::solve_cubic_monic(c[2], c[1], c[0]);
    default:
        return poly::solve_quartic_monic(c[3], c[2], c[1], c[0]);
    }
}

std::vector<EigenPair> eig_dense(const CMatrix& m, double tol) {
    const std::size_t n = m.dim();
    if (n == 0)
        throw StructureError("eig_dense requires n >= 1");
    if (n > 16)
        throw StructureError("eig_dense supports n <= 16");
    if (!(tol > 0.0))
        throw StructureError("eig_dense requires tol > 0");
    if (!m.finite())
        throw StructureError("eig_dense requires finite entries");

    const double scale = std::max(1.0, m.frobenius_norm());
    if (n <= 4) {
        auto pairs = eig_closed_form_path(m);
        double worst = 0.0;
        for (const auto& p : pairs)
            worst = std::max(worst, pair_residual(m, p));
        if (worst <= tol * scale)
            return pairs;
        // fall through to the QR path if the fast path lost accuracy
    }
    return eig_qr_path(m, tol);
}

std::vector<Complex> eig_values(const CMatrix& m, double tol) {
    std::vector<Complex> vals;
    for (const auto& p : eig_dense(m, tol))
        vals.push_back(p.value);
    return vals;
}

void attach_j_norms(std::vector<EigenPair>& pairs, const Metric& J) {
    for (auto& p : pairs)
        p.j_norm = indefinite_inner(p.vector, p.vector, J).real();
}

} // namespace knr
