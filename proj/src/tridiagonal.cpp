#include "knr/tridiagonal.hpp"

#include "knr/krein.hpp"

#include <cmath>

namespace knr {

namespace {

constexpr double kStructTol = 1e-12;

double offdiag_scale(const TridiagonalSpec& s) {
    double m = std::max(1.0, std::abs(s.a));
    for (const auto& v : s.b)
        m = std::max(m, std::abs(v));
    for (const auto& v : s.c)
        m = std::max(m, std::abs(v));
    return m;
}

bool close(Complex x, Complex y, double tol) {
    return std::abs(x - y) <= tol;
}

bool lex_less(Complex x, Complex y) {
    if (x.real() != y.real())
        return x.real() < y.real();
    return x.imag() < y.imag();
}

// Centrosymmetric representative of a spec whose sub/superdiagonal entries may
// have been interchanged positionwise (the range is invariant under those
// swaps, so the certificates accept either form). For positions j and m-j the
// unordered entry pairs must match; the representative orders each pair
// deterministically so that swapped inputs give bit-identical certificates.
// Near-misses are rejected, not repaired.
std::vector<Complex> canonical_offdiag(const TridiagonalSpec& spec, const char* who) {
    const std::size_t m = spec.order;
    const double tol = kStructTol * offdiag_scale(spec);
    std::vector<Complex> beta(m - 1);
    for (std::size_t j = 1; j <= m - 1; ++j) {
        const std::size_t k = m - j; // partner position
        if (j > k)
            continue;
        const Complex bj = spec.b[j - 1], cj = spec.c[j - 1];
        if (j == k) {
            if (!close(bj, cj, tol))
                throw StructureError(std::string(who) +
                                     ": middle off-diagonal entries must coincide");
            beta[j - 1] = bj;
            continue;
        }
        const Complex bk = spec.b[k - 1], ck = spec.c[k - 1];
        const bool direct = close(bj, bk, tol) && close(cj, ck, tol);
        const bool mirrored = close(bj, ck, tol) && close(cj, bk, tol);
        if (!direct && !mirrored)
            throw StructureError(std::string(who) +
                                 ": entries are not centrosymmetric (up to sub/super "
                                 "interchanges)");
        if (lex_less(bj, cj)) {
            beta[j - 1] = bj;
            beta[k - 1] = cj;
        } else {
            beta[j - 1] = cj;
            beta[k - 1] = bj;
        }
    }
    return beta;
}

void require_strict_centro(const TridiagonalSpec& spec, const char* who) {
    if (!spec.centrosymmetric())
        throw StructureError(std::string(who) + ": input must be centrosymmetric "
                                                "(c_j = b_{m-j})");
}

// Strict verdict inequality with a relative guard band; equality within the
// band counts as a failure.
bool strictly_less(double lhs, double rhs, double scale) {
    return lhs < rhs - kStructTol * std::max(1.0, scale);
}

Hyperbola certified_hyperbola(Complex center, Complex delta, double nontrans_sq) {
    const Complex root = std::sqrt(delta);
    return Hyperbola::from_foci_nontransverse(center + root, center - root,
                                              std::sqrt(nontrans_sq));
}

} // namespace

void TridiagonalSpec::validate() const {
    if (order < 3)
        throw StructureError("tridiagonal order must be >= 3");
    if (b.size() != order - 1 || c.size() != order - 1)
        throw StructureError("tridiagonal off-diagonals must have length order-1");
    if (!std::isfinite(a))
        throw StructureError("tridiagonal diagonal amplitude must be finite");
    for (const auto& v : b)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw StructureError("tridiagonal entries must be finite");
    for (const auto& v : c)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw StructureError("tridiagonal entries must be finite");
}

std::vector<int> TridiagonalSpec::diagonal_pattern(std::size_t m) {
    std::vector<int> p(m);
    if (m % 2 == 1) {
        for (std::size_t i = 0; i < m; ++i)
            p[i] = (i % 2 == 0) ? 1 : -1;
    } else {
        const std::size_t half = m / 2;
        for (std::size_t i = 0; i < half; ++i)
            p[i] = (i % 2 == 0) ? 1 : -1;
        for (std::size_t i = half; i < m; ++i)
            p[i] = p[m - 1 - i];
    }
    return p;
}

Metric TridiagonalSpec::metric_for_order(std::size_t m) {
    return Metric(diagonal_pattern(m));
}

Metric TridiagonalSpec::metric() const {
    return metric_for_order(order);
}

CMatrix TridiagonalSpec::to_matrix() const {
    validate();
    const auto pattern = diagonal_pattern(order);
    CMatrix t(order);
    for (std::size_t i = 0; i < order; ++i)
        t(i, i) = static_cast<double>(pattern[i]) * a;
    for (std::size_t j = 0; j + 1 < order; ++j) {
        t(j, j + 1) = b[j];
        t(j + 1, j) = c[j];
    }
    return t;
}

bool TridiagonalSpec::centrosymmetric(double tol) const {
    const double band = tol * offdiag_scale(*this);
    for (std::size_t j = 1; j <= order - 1; ++j)
        if (!close(c[j - 1], b[order - j - 1], band))
            return false;
    return true;
}

NormalForm normal_form(const CMatrix& A, const Metric& J) {
    const std::size_t m = A.dim();
    if (m < 3)
        throw StructureError("normal_form: order must be >= 3");
    if (J.dim() != m)
        throw StructureError("normal_form: metric dimension mismatch");
    if (!(J == TridiagonalSpec::metric_for_order(m)))
        throw StructureError("normal_form: metric does not match the biperiodic "
                             "sign pattern for this order");
    const double scale = std::max(1.0, A.max_abs());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if ((i > j + 1 || j > i + 1) && std::abs(A(i, j)) > kStructTol * scale)
                throw StructureError("normal_form: matrix is not tridiagonal");

    // Tr(A) = e^{i tau} a Tr(J) + m delta and Tr(JA) = e^{i tau} a m + delta Tr(J)
    // determine the rotation-amplitude X = e^{i tau} a and the shift exactly.
    const Complex tr_a = A.trace();
    Complex tr_ja = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        tr_ja += static_cast<double>(J.sign(i)) * A(i, i);
    const double k = static_cast<double>(J.trace());
    const double md = static_cast<double>(m);
    const double denom = md * md - k * k;
    const Complex x = (md * tr_ja - k * tr_a) / denom;
    const Complex delta = (md * tr_a - k * tr_ja) / denom;

    const double a = std::abs(x);
    const double tau = (a > kStructTol * scale) ? std::arg(x) : 0.0;
    const Complex unrot = std::polar(1.0, -tau);

    const auto pattern = TridiagonalSpec::diagonal_pattern(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Complex resid = unrot * (A(i, i) - delta) -
                              Complex(static_cast<double>(pattern[i]) * a, 0.0);
        if (std::abs(resid) > 1e-10 * scale)
            throw StructureError("normal_form: diagonal is not (quasi-)biperiodic "
                                 "after the shift");
    }

    TridiagonalSpec spec;
    spec.order = m;
    spec.a = a;
    spec.b.resize(m - 1);
    spec.c.resize(m - 1);
    for (std::size_t j = 0; j + 1 < m; ++j) {
        spec.b[j] = A(j, j + 1) * unrot;
        spec.c[j] = A(j + 1, j) * unrot;
    }
    return NormalForm{std::move(spec), tau, delta};
}

Certificate3 certify_order3(const TridiagonalSpec& spec) {
    spec.validate();
    if (spec.order != 3)
        throw StructureError("certify_order3: order must be 3");

    const double a2 = spec.a * spec.a;
    Complex delta = a2;
    double sq = 0.0;
    for (std::size_t j = 0; j < 2; ++j) {
        delta += spec.b[j] * spec.c[j];
        sq += std::norm(spec.b[j]) + std::norm(spec.c[j]);
    }
    Certificate3 cert;
    cert.delta = delta;
    cert.trace_adj = 3.0 * a2 - sq;
    cert.third_eigenvalue = spec.a;

    const double twod = 2.0 * std::abs(delta);
    const double scale = std::max({1.0, a2, twod, std::abs(cert.trace_adj)});
    const bool left = strictly_less(a2 - twod, cert.trace_adj, scale);
    const bool right = strictly_less(cert.trace_adj, a2 + twod, scale);
    cert.verdict = left && right;
    if (!cert.verdict) {
        const double band = kStructTol * scale;
        cert.at_boundary = std::abs(cert.trace_adj - (a2 - twod)) <= band ||
                           std::abs(cert.trace_adj - (a2 + twod)) <= band;
    }
    if (cert.verdict) {
        const double nontrans_sq = twod - 2.0 * a2 + sq;
        cert.hyperbola = certified_hyperbola(Complex(0.0, 0.0), delta, nontrans_sq);
    }
    return cert;
}

CMatrix reduction_q(std::size_t m) {
    const double h = std::sqrt(0.5);
    if (m == 4) {
        CMatrix q(4);
        q(0, 0) = h; q(0, 3) = h;
        q(1, 1) = h; q(1, 2) = h;
        q(2, 1) = -h; q(2, 2) = h;
        q(3, 0) = -h; q(3, 3) = h;
        return q;
    }
    if (m == 5) {
        CMatrix q(5);
        q(0, 0) = h; q(0, 4) = h;
        q(1, 1) = h; q(1, 3) = h;
        q(2, 2) = 1.0;
        q(3, 1) = -h; q(3, 3) = h;
        q(4, 0) = -h; q(4, 4) = h;
        return q;
    }
    if (m == 6) {
        CMatrix q(6);
        q(0, 0) = h; q(0, 5) = h;
        q(1, 1) = h; q(1, 4) = h;
        q(2, 2) = h; q(2, 3) = h;
        q(3, 2) = -h; q(3, 3) = h;
        q(4, 1) = -h; q(4, 4) = h;
        q(5, 0) = -h; q(5, 5) = h;
        return q;
    }
    throw StructureError("reduction_q: only orders 4, 5, 6 have block reductions");
}

namespace {

// Q# A Q for the conventional metric, checked block diagonal.
CMatrix reduced_block_diagonal(const TridiagonalSpec& spec, std::size_t upper) {
    const CMatrix a = spec.to_matrix();
    const Metric j = spec.metric();
    const CMatrix q = reduction_q(spec.order);
    const CMatrix red = j_adjoint(q, j) * a * q;
    const double scale = std::max(1.0, a.max_abs());
    for (std::size_t i = 0; i < spec.order; ++i)
        for (std::size_t jj = 0; jj < spec.order; ++jj) {
            const bool in_upper = i < upper && jj < upper;
            const bool in_lower = i >= upper && jj >= upper;
            if (!in_upper && !in_lower && std::abs(red(i, jj)) > 1e-10 * scale)
                throw StructureError("block reduction produced off-block residue; "
                                     "input structure is broken");
        }
    return red;
}

CMatrix submatrix(const CMatrix& m, std::size_t r0, std::size_t n) {
    CMatrix s(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            s(i, j) = m(r0 + i, r0 + j);
    return s;
}

CMatrix exchange_conjugate(const CMatrix& m) {
    const std::size_t n = m.dim();
    CMatrix s(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            s(i, j) = m(n - 1 - i, n - 1 - j);
    return s;
}

} // namespace

std::pair<CMatrix, CMatrix> block_reduce5(const TridiagonalSpec& spec) {
    spec.validate();
    if (spec.order != 5)
        throw StructureError("block_reduce5: order must be 5");
    require_strict_centro(spec, "block_reduce5");
    const CMatrix red = reduced_block_diagonal(spec, 2);
    return {submatrix(red, 0, 2), submatrix(red, 2, 3)};
}

Certificate5 certify_order5(const TridiagonalSpec& spec) {
    spec.validate();
    if (spec.order != 5)
        throw StructureError("certify_order5: order must be 5");
    const auto beta = canonical_offdiag(spec, "certify_order5");

    const double a2 = spec.a * spec.a;
    Certificate5 cert;
    cert.delta1 = a2 + beta[0] * beta[3];
    cert.m1 = 2.0 * a2 - (std::norm(beta[0]) + std::norm(beta[3]));
    cert.delta2 = cert.delta1 + 2.0 * (beta[1] * beta[2]);
    cert.m2 = cert.m1 - 2.0 * (std::norm(beta[1]) + std::norm(beta[2]));

    const double twod2 = 2.0 * std::abs(cert.delta2);
    cert.verdict = strictly_less(std::abs(cert.m2), twod2, std::max(1.0, twod2));
    if (cert.verdict)
        cert.h2 = certified_hyperbola(Complex(0.0, 0.0), cert.delta2, twod2 - cert.m2);

    const double twod1 = 2.0 * std::abs(cert.delta1);
    if (strictly_less(std::abs(cert.m1), twod1, std::max(1.0, twod1))) {
        cert.h1 = certified_hyperbola(Complex(0.0, 0.0), cert.delta1, twod1 - cert.m1);
    } else {
        cert.h1_degenerate = true;
        const Complex root = std::sqrt(cert.delta1);
        cert.h1_points = {root, -root};
    }
    return cert;
}

std::pair<CMatrix, CMatrix> block_reduce4(const TridiagonalSpec& spec) {
    spec.validate();
    if (spec.order != 4)
        throw StructureError("block_reduce4: order must be 4");
    require_strict_centro(spec, "block_reduce4");
    const CMatrix red = reduced_block_diagonal(spec, 2);
    // upper block is S_-; the lower block R satisfies E2 R E2 = S_+
    return {exchange_conjugate(submatrix(red, 2, 2)), submatrix(red, 0, 2)};
}

Certificate4 certify_order4(const TridiagonalSpec& spec) {
    spec.validate();
    if (spec.order != 4)
        throw StructureError("certify_order4: order must be 4");
    const auto beta = canonical_offdiag(spec, "certify_order4");

    const double a = spec.a;
    const double a2 = a * a;
    Certificate4 cert;
    cert.b2 = beta[1];
    cert.delta = a2 + beta[0] * beta[2];
    cert.m = 2.0 * a2 - (std::norm(beta[0]) + std::norm(beta[2]));

    const double scale = offdiag_scale(spec);
    const bool b2_zero = std::abs(cert.b2) <= kStructTol * scale;

    if (b2_zero) {
        cert.delta_plus = cert.delta;
        cert.delta_minus = cert.delta;
        cert.m_plus = cert.m;
        cert.m_minus = cert.m;
        const double twod = 2.0 * std::abs(cert.delta);
        cert.verdict = strictly_less(std::abs(cert.m), twod, std::max(1.0, twod));
        cert.subcase = cert.verdict ? Order4Subcase::B2ZeroDisc : Order4Subcase::NotCertified;
        if (cert.verdict) {
            const Hyperbola h =
                certified_hyperbola(Complex(0.0, 0.0), cert.delta, twod - cert.m);
            cert.h_plus = h;
            cert.h_minus = h;
        }
        return cert;
    }

    const Complex b2 = cert.b2;
    cert.delta_plus = cert.delta - a * b2 + b2 * b2 / 4.0;
    cert.delta_minus = cert.delta + a * b2 + b2 * b2 / 4.0;

    // Two candidate sign pairings exist for the +-2 a Re(b2) term; the one
    // consistent with the 2x2 hyperbolicity theorem applied directly to the
    // blocks S_+- = [[a, b1], [b3, +-b2 - a]] is
    //   M_+- = M + |b2|^2/2 -+ 2 a Re(b2),
    // since Tr(J1 S_s* J1 S_s) = M + |b2|^2 - 2 s a Re(b2) and
    // |l1|^2 + |l2|^2 = |b2|^2/2 + 2 |Delta_s|. The entry-wise statement with
    // the opposite pairing is flagged so callers can log the discrepancy.
    const double cross = 2.0 * a * b2.real();
    cert.m_plus = cert.m + 0.5 * std::norm(b2) - cross;
    cert.m_minus = cert.m + 0.5 * std::norm(b2) + cross;
    cert.pairing_swapped = std::abs(cross) > kStructTol * std::max(1.0, scale * scale);

    const double twod_p = 2.0 * std::abs(cert.delta_plus);
    const double twod_m = 2.0 * std::abs(cert.delta_minus);
    const bool ok_p = strictly_less(std::abs(cert.m_plus), twod_p, std::max(1.0, twod_p));
    const bool ok_m = strictly_less(std::abs(cert.m_minus), twod_m, std::max(1.0, twod_m));
    cert.verdict = ok_p && ok_m;
    cert.subcase = cert.verdict ? Order4Subcase::Bihyperbolic : Order4Subcase::NotCertified;

    if (ok_p)
        cert.h_plus = certified_hyperbola(0.5 * b2, cert.delta_plus, twod_p - cert.m_plus);
    if (ok_m)
        cert.h_minus =
            certified_hyperbola(-0.5 * b2, cert.delta_minus, twod_m - cert.m_minus);
    return cert;
}

std::pair<CMatrix, CMatrix> block_reduce6(const TridiagonalSpec& spec) {
    spec.validate();
    if (spec.order != 6)
        throw StructureError("block_reduce6: order must be 6");
    require_strict_centro(spec, "block_reduce6");
    const CMatrix red = reduced_block_diagonal(spec, 3);
    return {submatrix(red, 0, 3), submatrix(red, 3, 3)};
}

Certificate6 certify_order6(const TridiagonalSpec& spec) {
    spec.validate();
    if (spec.order != 6)
        throw StructureError("certify_order6: order must be 6");
    const auto beta = canonical_offdiag(spec, "certify_order6");

    const double a2 = spec.a * spec.a;
    Certificate6 cert;
    const double scale = offdiag_scale(spec);
    cert.b3_zero = std::abs(beta[2]) <= kStructTol * scale;
    cert.focus_sq = a2 + beta[0] * beta[4] + beta[1] * beta[3];
    const double sq = (std::norm(beta[0]) + std::norm(beta[4])) +
                      (std::norm(beta[1]) + std::norm(beta[3]));
    cert.trace_s = 3.0 * a2 - sq;

    if (cert.b3_zero) {
        const double twod = 2.0 * std::abs(cert.focus_sq);
        cert.verdict =
            strictly_less(std::abs(cert.trace_s - a2), twod, std::max(1.0, twod));
        if (cert.verdict) {
            const double nontrans_sq = twod - 2.0 * a2 + sq;
            cert.k = certified_hyperbola(Complex(0.0, 0.0), cert.focus_sq, nontrans_sq);
        }
    }

    // The two cubic curve factors always exist; for b3 != 0 they are the
    // irreducible pieces callers cross-check numerically.
    TridiagonalSpec canon;
    canon.order = 6;
    canon.a = spec.a;
    canon.b = beta;
    canon.c.assign(5, Complex(0.0, 0.0));
    for (std::size_t j = 0; j < 5; ++j)
        canon.c[j] = beta[4 - j];
    auto [s_block, r_block] = block_reduce6(canon);
    const Metric j2 = TridiagonalSpec::metric_for_order(3);
    cert.cubic_factors = std::make_pair(CubicForm::boundary_cubic(s_block, j2),
                                        CubicForm::boundary_cubic(r_block, j2));
    return cert;
}

} // namespace knr
