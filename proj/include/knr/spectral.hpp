#pragma once

#include "knr/eig.hpp"
#include "knr/types.hpp"

#include <utility>
#include <vector>

namespace knr {

/// Eigenvalues of a J-Hermitian matrix, split by the sign of the eigenvector
/// J-norm. sigma_plus/sigma_minus are sorted descending. Eigenvalues whose
/// sign subspace is numerically indeterminate land in `neutral` together
/// with the magnitude of the offending J-norm (Gram eigenvalue for repeated
/// eigenvalues). Non-real eigenvalues are also reported through `neutral`
/// since their eigenvectors are J-isotropic.
struct SpectrumSplit {
    std::vector<double> sigma_plus;
    std::vector<double> sigma_minus;
    std::vector<std::pair<Complex, double>> neutral;
    bool all_real = false;
    bool in_class_j = false;
    /// Valid only when in_class_j: true when min(sigma_plus) > max(sigma_minus).
    bool plus_above = false;
};

SpectrumSplit split_spectrum(const CMatrix& H, const Metric& J, double tol = 1e-8);

enum class InvalidReason {
    None,
    NonRealSpectrum,
    NeutralEigenvector,
    Interlacing,
    Tie,
    DefectiveSplit,
};

/// Support-line bounds of the range in direction theta: when H_theta(A) has
/// real, sign-definite, non-interlacing spectrum, lambda_L and lambda_R are
/// the two facing extreme eigenvalues of opposite sign classes.
struct SupportData {
    double theta = 0.0;
    double lambda_L = 0.0;
    double lambda_R = 0.0;
    bool valid = false;
    /// True when sigma_plus sits above sigma_minus (lambda_R = min sigma_plus).
    bool plus_on_right = false;
    InvalidReason reason = InvalidReason::None;
};

SupportData support_bounds(const CMatrix& A, const Metric& J, double theta,
                           double tol = 1e-8);

/// det(H_theta(A) - z I).
Complex knr_poly_eval(const CMatrix& A, const Metric& J, Complex z, double theta);

/// det(u Re_J(A) + v Im_J(A) + w I), the dual curve form; homogeneous of
/// degree n in (u, v, w).
Complex curve_poly_eval(const CMatrix& A, const Metric& J, double u, double v, double w);

/// Maximal arc of angles where support_bounds is valid, found by a grid scan
/// with bisection-refined endpoints. `lo < hi` always; the arc may wrap past
/// 2*pi (hi up to lo + 2*pi).
struct ThetaWindow {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;
    bool full_circle = false;
    double width() const { return empty ? 0.0 : hi - lo; }
};

ThetaWindow omega_window(const CMatrix& A, const Metric& J, int grid_size = 720,
                         double refine_tol = 1e-10);

/// Evenly spaced angles strictly inside a window (margin keeps clear of the
/// endpoints, where the split degenerates).
std::vector<double> window_grid(const ThetaWindow& w, int count, double margin = 1e-4);

/// Plain LU determinant (partial pivoting).
Complex determinant(CMatrix a);

} // namespace knr
