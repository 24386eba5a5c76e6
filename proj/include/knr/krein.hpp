#pragma once

#include "knr/types.hpp"

#include <utility>

namespace knr {

/// Indefinite inner product [x,y]_J = y* J x.
Complex indefinite_inner(const CVector& x, const CVector& y, const Metric& J);

/// J-adjoint A# = J A* J.
CMatrix j_adjoint(const CMatrix& A, const Metric& J);

/// Splits A = Re_J(A) + i Im_J(A) into its J-Hermitian parts
/// Re_J(A) = (A + A#)/2 and Im_J(A) = (A - A#)/(2i).
std::pair<CMatrix, CMatrix> cartesian_decompose(const CMatrix& A, const Metric& J);

/// H_theta(A) = Re_J(A) cos(theta) + Im_J(A) sin(theta).
CMatrix h_theta(const CMatrix& A, const Metric& J, double theta);

/// True when max-norm of U U# - I is at most tol.
bool is_j_unitary(const CMatrix& U, const Metric& J, double tol);

/// True when max-norm of A - A# is at most tol * max(1, |A|_max).
bool is_j_hermitian(const CMatrix& A, const Metric& J, double tol);

/// J as a dense matrix.
CMatrix metric_matrix(const Metric& J);

/// J x (flips the negative-sign components).
CVector metric_apply(const Metric& J, const CVector& x);

} // namespace knr
