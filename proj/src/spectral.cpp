#include "knr/spectral.hpp"

#include "knr/krein.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace knr {

namespace {

// Inertia of the J-Gram matrix of a cluster's eigenvectors: how many
// positive, negative and numerically-zero directions the span carries.
struct Inertia {
    int pos = 0;
    int neg = 0;
    int zero = 0;
    double min_abs = 0.0;
};

Inertia gram_inertia(const std::vector<const EigenPair*>& cluster, const Metric& J,
                     double tol) {
    const std::size_t k = cluster.size();
    CMatrix g(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            g(i, j) = indefinite_inner(cluster[j]->vector, cluster[i]->vector, J);
    // hermitize against rounding
    CMatrix gh(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            gh(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    Inertia in;
    in.min_abs = std::numeric_limits<double>::infinity();
    for (const auto& p : eig_dense(gh, 1e-10)) {
        const double ev = p.value.real();
        in.min_abs = std::min(in.min_abs, std::abs(ev));
        if (ev > tol)
            ++in.pos;
        else if (ev < -tol)
            ++in.neg;
        else
            ++in.zero;
    }
    return in;
}

} // namespace

SpectrumSplit split_spectrum(const CMatrix& H, const Metric& J, double tol) {
    if (H.dim() != J.dim())
        throw StructureError("split_spectrum: dimension mismatch");
    if (!(tol > 0.0))
        throw StructureError("split_spectrum: tol must be positive");
    if (!is_j_hermitian(H, J, std::max(tol, 1e-10)))
        throw StructureError("split_spectrum: input is not J-Hermitian within tolerance");

    auto pairs = eig_dense(H, 1e-10);
    attach_j_norms(pairs, J);

    const double scale = std::max(1.0, H.frobenius_norm());
    const double real_tol = tol * scale;

    SpectrumSplit out;
    out.all_real = true;
    for (const auto& p : pairs)
        if (std::abs(p.value.imag()) > real_tol)
            out.all_real = false;

    // Non-real eigenvalues carry J-isotropic eigenvectors; report them as
    // neutral and split only the real part of the spectrum.
    std::vector<const EigenPair*> real_pairs;
    for (const auto& p : pairs) {
        if (std::abs(p.value.imag()) > real_tol)
            out.neutral.emplace_back(p.value, std::abs(p.j_norm.value_or(0.0)));
        else
            real_pairs.push_back(&p);
    }

    // Cluster coincident real eigenvalues; classify clusters by Gram inertia.
    std::sort(real_pairs.begin(), real_pairs.end(),
              [](const EigenPair* a, const EigenPair* b) {
                  return a->value.real() < b->value.real();
              });
    const double cluster_tol = 1e-8 * scale;
    std::size_t i = 0;
    while (i < real_pairs.size()) {
        std::size_t j = i + 1;
        while (j < real_pairs.size() &&
               real_pairs[j]->value.real() - real_pairs[j - 1]->value.real() <= cluster_tol)
            ++j;
        std::vector<const EigenPair*> cluster(real_pairs.begin() + i, real_pairs.begin() + j);
        double lambda = 0.0;
        for (const auto* p : cluster)
            lambda += p->value.real();
        lambda /= static_cast<double>(cluster.size());

        if (cluster.size() == 1) {
            const double jn = cluster[0]->j_norm.value_or(0.0);
            if (jn > tol)
                out.sigma_plus.push_back(lambda);
            else if (jn < -tol)
                out.sigma_minus.push_back(lambda);
            else
                out.neutral.emplace_back(Complex(lambda, 0.0), std::abs(jn));
        } else {
            const Inertia in = gram_inertia(cluster, J, tol);
            for (int k = 0; k < in.pos; ++k)
                out.sigma_plus.push_back(lambda);
            for (int k = 0; k < in.neg; ++k)
                out.sigma_minus.push_back(lambda);
            for (int k = 0; k < in.zero; ++k)
                out.neutral.emplace_back(Complex(lambda, 0.0), in.min_abs);
        }
        i = j;
    }

    std::sort(out.sigma_plus.rbegin(), out.sigma_plus.rend());
    std::sort(out.sigma_minus.rbegin(), out.sigma_minus.rend());

    // Class membership: real spectrum, no neutral directions, counts matching
    // the metric signature, and sign classes that do not interlace.
    out.in_class_j = false;
    out.plus_above = false;
    if (out.all_real && out.neutral.empty() &&
        out.sigma_plus.size() == J.plus_count() &&
        out.sigma_minus.size() == J.dim() - J.plus_count()) {
        if (out.sigma_plus.empty() || out.sigma_minus.empty()) {
            out.in_class_j = true; // vacuous: a definite metric cannot interlace
            out.plus_above = out.sigma_minus.empty();
        } else {
            double spread = std::max({std::abs(out.sigma_plus.front()),
                                      std::abs(out.sigma_plus.back()),
                                      std::abs(out.sigma_minus.front()),
                                      std::abs(out.sigma_minus.back()), 1.0});
            const double guard = 1e-10 * spread;
            const double min_plus = out.sigma_plus.back();
            const double max_plus = out.sigma_plus.front();
            const double min_minus = out.sigma_minus.back();
            const double max_minus = out.sigma_minus.front();
            if (min_plus - max_minus > guard) {
                out.in_class_j = true;
                out.plus_above = true;
            } else if (min_minus - max_plus > guard) {
                out.in_class_j = true;
                out.plus_above = false;
            }
            // ties and interlacing both leave in_class_j false
        }
    }
    return out;
}

SupportData support_bounds(const CMatrix& A, const Metric& J, double theta, double tol) {
    if (!J.indefinite())
        throw StructureError(
            "support_bounds: metric is definite; classical numerical range semantics "
            "are out of scope here");
    SupportData sd;
    sd.theta = theta;
    const CMatrix H = h_theta(A, J, theta);

    // A scalar H_theta supports the range along a single degenerate line
    // lambda_L = lambda_R (the identity matrix sweeps to the point 1 this
    // way). Only non-scalar ties leave class J.
    {
        const std::size_t n = H.dim();
        const Complex mean = H.trace() / static_cast<double>(n);
        CMatrix residual = H;
        for (std::size_t i = 0; i < n; ++i)
            residual(i, i) -= mean;
        if (residual.max_abs() <= 1e-12 * std::max(1.0, H.max_abs())) {
            sd.valid = true;
            sd.plus_on_right = true;
            sd.lambda_L = sd.lambda_R = mean.real();
            return sd;
        }
    }

    const SpectrumSplit sp = split_spectrum(H, J, tol);

    if (!sp.all_real) {
        sd.reason = InvalidReason::NonRealSpectrum;
        return sd;
    }
    if (!sp.neutral.empty()) {
        sd.reason = InvalidReason::NeutralEigenvector;
        return sd;
    }
    if (sp.sigma_plus.size() != J.plus_count() ||
        sp.sigma_minus.size() != J.dim() - J.plus_count()) {
        sd.reason = InvalidReason::DefectiveSplit;
        return sd;
    }
    if (!sp.in_class_j) {
        // distinguish a strict overlap from a tie at the boundary
        const double min_plus = sp.sigma_plus.back();
        const double max_plus = sp.sigma_plus.front();
        const double min_minus = sp.sigma_minus.back();
        const double max_minus = sp.sigma_minus.front();
        double spread = std::max({std::abs(max_plus), std::abs(min_plus),
                                  std::abs(max_minus), std::abs(min_minus), 1.0});
        const double guard = 1e-10 * spread;
        const bool overlap_plus = max_minus - min_plus > guard;
        const bool overlap_minus = max_plus - min_minus > guard;
        sd.reason = (overlap_plus && overlap_minus) ? InvalidReason::Interlacing
                                                    : InvalidReason::Tie;
        return sd;
    }

    sd.valid = true;
    sd.plus_on_right = sp.plus_above;
    if (sp.plus_above) {
        sd.lambda_R = sp.sigma_plus.back();
        sd.lambda_L = sp.sigma_minus.front();
    } else {
        sd.lambda_R = sp.sigma_minus.back();
        sd.lambda_L = sp.sigma_plus.front();
    }
    return sd;
}

Complex determinant(CMatrix a) {
    const std::size_t n = a.dim();
    Complex det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a(col, col));
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(a(i, col)) > best) {
                best = std::abs(a(i, col));
                piv = i;
            }
        if (best == 0.0)
            return Complex(0.0, 0.0);
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(col, j), a(piv, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            const Complex f = a(i, col) / a(col, col);
            if (f == Complex(0.0, 0.0))
                continue;
            for (std::size_t j = col + 1; j < n; ++j)
                a(i, j) -= f * a(col, j);
        }
    }
    return det;
}

Complex knr_poly_eval(const CMatrix& A, const Metric& J, Complex z, double theta) {
    CMatrix m = h_theta(A, J, theta);
    for (std::size_t i = 0; i < m.dim(); ++i)
        m(i, i) -= z;
    return determinant(std::move(m));
}

Complex curve_poly_eval(const CMatrix& A, const Metric& J, double u, double v, double w) {
    auto [re, im] = cartesian_decompose(A, J);
    const std::size_t n = A.dim();
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = u * re(i, j) + v * im(i, j);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) += w;
    return determinant(std::move(m));
}

ThetaWindow omega_window(const CMatrix& A, const Metric& J, int grid_size,
                         double refine_tol) {
    if (grid_size < 16)
        throw StructureError("omega_window: grid_size must be >= 16");
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<bool> ok(grid_size);
    auto valid_at = [&](double th) { return support_bounds(A, J, th).valid; };
    for (int k = 0; k < grid_size; ++k)
        ok[k] = valid_at(two_pi * k / grid_size);

    ThetaWindow w;
    const int total_valid = static_cast<int>(std::count(ok.begin(), ok.end(), true));
    if (total_valid == 0)
        return w;
    if (total_valid == grid_size) {
        w.empty = false;
        w.full_circle = true;
        w.lo = 0.0;
        w.hi = two_pi;
        return w;
    }

    // longest circular run of valid grid points
    int best_start = -1, best_len = 0;
    int k = 0;
    while (k < grid_size && ok[k])
        ++k; // start scanning from an invalid point
    const int origin = (k == grid_size) ? 0 : k;
    int run_start = -1, run_len = 0;
    for (int step = 0; step < grid_size; ++step) {
        const int idx = (origin + step) % grid_size;
        if (ok[idx]) {
            if (run_len == 0)
                run_start = idx;
            ++run_len;
            if (run_len > best_len) {
                best_len = run_len;
                best_start = run_start;
            }
        } else {
            run_len = 0;
        }
    }

    const double h = two_pi / grid_size;
    double lo_valid = best_start * h;
    double hi_valid = (best_start + best_len - 1) * h;

    // refine both endpoints by bisection between valid and invalid samples
    double lo_invalid = lo_valid - h;
    double hi_invalid = hi_valid + h;
    while (lo_valid - lo_invalid > refine_tol) {
        const double mid = 0.5 * (lo_valid + lo_invalid);
        (valid_at(mid) ? lo_valid : lo_invalid) = mid;
    }
    while (hi_invalid - hi_valid > refine_tol) {
        const double mid = 0.5 * (hi_valid + hi_invalid);
        (valid_at(mid) ? hi_valid : hi_invalid) = mid;
    }

    w.empty = false;
    w.lo = lo_valid;
    w.hi = hi_valid;
    return w;
}

std::vector<double> window_grid(const ThetaWindow& w, int count, double margin) {
    std::vector<double> grid;
    if (w.empty || count <= 0)
        return grid;
    const double pad = w.full_circle ? 0.0 : margin * w.width();
    const double lo = w.lo + pad;
    const double hi = w.hi - pad;
    if (count == 1) {
        grid.push_back(0.5 * (lo + hi));
        return grid;
    }
    for (int k = 0; k < count; ++k)
        grid.push_back(lo + (hi - lo) * k / (count - 1));
    return grid;
}

} // namespace knr
