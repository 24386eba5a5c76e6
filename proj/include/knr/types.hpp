#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace knr {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Malformed input: bad dimensions, broken matrix structure, schema violations.
class StructureError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative solver exhausted its iteration budget.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Signature matrix J = diag(j_1,...,j_n) with j_i = +-1, defining [x,y]_J = y* J x.
/// The permutation freedom of a general signature matrix is absorbed into the
/// entry order, so only the sign vector is stored. J*J = I by construction.
class Metric {
public:
    explicit Metric(std::vector<int> signs);
    static Metric euclidean(std::size_t n);

    std::size_t dim() const { return signs_.size(); }
    int sign(std::size_t i) const { return signs_[i]; }
    const std::vector<int>& signs() const { return signs_; }
    std::size_t plus_count() const { return r_; }
    bool indefinite() const { return r_ > 0 && r_ < signs_.size(); }
    int trace() const;

    bool operator==(const Metric& other) const { return signs_ == other.signs_; }

private:
    std::vector<int> signs_;
    std::size_t r_ = 0;
};

/// Dense square complex matrix, row-major storage, value semantics.
/// Sized for the small problems handled here (n <= 16); nothing is sparse.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t n) : n_(n), e_(n * n) {}
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);
    static CMatrix identity(std::size_t n);

    std::size_t dim() const { return n_; }

    Complex& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

    CMatrix& operator+=(const CMatrix& rhs);
    CMatrix& operator-=(const CMatrix& rhs);
    CMatrix& operator*=(Complex s);

    /// Conjugate transpose A*.
    CMatrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool finite() const;

    CVector apply(const CVector& x) const;

private:
    std::size_t n_ = 0;
    std::vector<Complex> e_;
};

CMatrix operator+(CMatrix lhs, const CMatrix& rhs);
CMatrix operator-(CMatrix lhs, const CMatrix& rhs);
CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);
CMatrix operator*(Complex s, CMatrix m);
CMatrix operator*(double s, CMatrix m);

double vec_norm(const CVector& x);
/// Euclidean inner product y* x (conjugate-linear in y).
Complex euclidean_inner(const CVector& x, const CVector& y);
void vec_scale(CVector& x, Complex s);

/// 17-significant-digit text forms used for logs and file output.
std::string format_double(double x);
std::string format_complex(Complex z); ///< "a+bi"
std::string format_matrix(const CMatrix& m);

} // namespace knr
