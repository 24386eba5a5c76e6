#include "knr/krein.hpp"

#include <cmath>

namespace knr {

namespace {

void require_dim(std::size_t a, std::size_t b, const char* where) {
    if (a != b)
        throw StructureError(std::string("dimension mismatch in ") + where);
}

} // namespace

Complex indefinite_inner(const CVector& x, const CVector& y, const Metric& J) {
    require_dim(x.size(), J.dim(), "indefinite_inner");
    require_dim(y.size(), J.dim(), "indefinite_inner");
    Complex s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += std::conj(y[i]) * static_cast<double>(J.sign(i)) * x[i];
    return s;
}

CMatrix j_adjoint(const CMatrix& A, const Metric& J) {
    require_dim(A.dim(), J.dim(), "j_adjoint");
    const std::size_t n = A.dim();
    CMatrix r(n);
    // (J A* J)_{ij} = j_i j_j conj(a_{ji})
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r(i, j) = static_cast<double>(J.sign(i) * J.sign(j)) * std::conj(A(j, i));
    return r;
}

std::pair<CMatrix, CMatrix> cartesian_decompose(const CMatrix& A, const Metric& J) {
    const CMatrix sharp = j_adjoint(A, J);
    const std::size_t n = A.dim();
    CMatrix re(n), im(n);
    const Complex half_over_i(0.0, -0.5); // 1/(2i)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            re(i, j) = 0.5 * (A(i, j) + sharp(i, j));
            im(i, j) = half_over_i * (A(i, j) - sharp(i, j));
        }
    return {re, im};
}

CMatrix h_theta(const CMatrix& A, const Metric& J, double theta) {
    auto [re, im] = cartesian_decompose(A, J);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const std::size_t n = A.dim();
    CMatrix h(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h(i, j) = c * re(i, j) + s * im(i, j);
    return h;
}

bool is_j_unitary(const CMatrix& U, const Metric& J, double tol) {
    require_dim(U.dim(), J.dim(), "is_j_unitary");
    if (tol <= 0.0)
        throw StructureError("is_j_unitary requires tol > 0");
    const CMatrix residual = U * j_adjoint(U, J) - CMatrix::identity(U.dim());
    return residual.max_abs() <= tol;
}

bool is_j_hermitian(const CMatrix& A, const Metric& J, double tol) {
    require_dim(A.dim(), J.dim(), "is_j_hermitian");
    const CMatrix residual = A - j_adjoint(A, J);
    return residual.max_abs() <= tol * std::max(1.0, A.max_abs());
}

CMatrix metric_matrix(const Metric& J) {
    CMatrix m(J.dim());
    for (std::size_t i = 0; i < J.dim(); ++i)
        m(i, i) = static_cast<double>(J.sign(i));
    return m;
}

CVector metric_apply(const Metric& J, const CVector& x) {
    require_dim(x.size(), J.dim(), "metric_apply");
    CVector y = x;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (J.sign(i) < 0)
            y[i] = -y[i];
    return y;
}

} // namespace knr
