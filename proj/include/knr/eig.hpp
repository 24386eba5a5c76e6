#pragma once

#include "knr/types.hpp"

#include <optional>
#include <vector>

namespace knr {

/// One eigenpair of a dense matrix. The eigenvector is Euclidean-normalized.
/// j_norm is [v,v]_J and stays unset until a metric is attached.
struct EigenPair {
    Complex value;
    CVector vector;
    std::optional<double> j_norm;
};

/// Dense small-matrix eigensolver (n <= 16).
///
/// Closed-form characteristic roots are used for n <= 4 and a Hessenberg
/// reduction followed by shifted QR iteration with deflation otherwise;
/// either path falls back to the other if the residual check at `tol`
/// fails. Eigenvectors are polished by inverse iteration on the input
/// matrix, so residuals land near machine precision for diagonalizable
/// inputs. Throws ConvergenceError when the QR iteration exhausts its
/// budget (the message carries the matrix and the iteration count).
std::vector<EigenPair> eig_dense(const CMatrix& M, double tol = 1e-10);

/// Eigenvalues only, in the order produced by eig_dense.
std::vector<Complex> eig_values(const CMatrix& M, double tol = 1e-10);

/// Fills in the j_norm field of each pair.
void attach_j_norms(std::vector<EigenPair>& pairs, const Metric& J);

/// Closed-form characteristic polynomial roots for n <= 4 (the fast path
/// of eig_dense, exposed for cross-checking against the QR route).
std::vector<Complex> eig_values_closed_form(const CMatrix& M);

namespace poly {

/// Roots of a*z^2 + b*z + c (a != 0), cancellation-safe.
std::vector<Complex> solve_quadratic(Complex a, Complex b, Complex c);
/// Roots of z^3 + a2*z^2 + a1*z + a0, Newton-polished.
std::vector<Complex> solve_cubic_monic(Complex a2, Complex a1, Complex a0);
/// Roots of z^4 + a3*z^3 + a2*z^2 + a1*z + a0, Newton-polished.
std::vector<Complex> solve_quartic_monic(Complex a3, Complex a2, Complex a1, Complex a0);

} // namespace poly

} // namespace knr
