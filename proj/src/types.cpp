#include "knr/types.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace knr {

Metric::Metric(std::vector<int> signs) : signs_(std::move(signs)) {
    if (signs_.empty())
        throw StructureError("metric must have dimension >= 1");
    for (int s : signs_) {
        if (s != 1 && s != -1)
            throw StructureError("metric entries must be +-1");
        if (s == 1)
            ++r_;
    }
}

Metric Metric::euclidean(std::size_t n) {
    return Metric(std::vector<int>(n, 1));
}

int Metric::trace() const {
    return static_cast<int>(2 * r_) - static_cast<int>(signs_.size());
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    n_ = rows.size();
    e_.assign(n_ * n_, Complex(0.0, 0.0));
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != n_)
            throw StructureError("matrix initializer must be square");
        std::size_t j = 0;
        for (const Complex& v : row)
            e_[i * n_ + j++] = v;
        ++i;
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
    if (n_ != rhs.n_)
        throw StructureError("matrix dimension mismatch in +");
    for (std::size_t k = 0; k < e_.size(); ++k)
        e_[k] += rhs.e_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
    if (n_ != rhs.n_)
        throw StructureError("matrix dimension mismatch in -");
    for (std::size_t k = 0; k < e_.size(); ++k)
        e_[k] -= rhs.e_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
    for (auto& v : e_)
        v *= s;
    return *this;
}

CMatrix CMatrix::adjoint() const {
    CMatrix a(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            a(j, i) = std::conj((*this)(i, j));
    return a;
}

Complex CMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        t += (*this)(i, i);
    return t;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : e_)
        s += std::norm(v);
    return std::sqrt(s);
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : e_)
        m = std::max(m, std::abs(v));
    return m;
}

bool CMatrix::finite() const {
    for (const auto& v : e_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            return false;
    return true;
}

CVector CMatrix::apply(const CVector& x) const {
    if (x.size() != n_)
        throw StructureError("matrix/vector dimension mismatch");
    CVector y(n_, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < n_; ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < n_; ++j)
            acc += (*this)(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

CMatrix operator+(CMatrix lhs, const CMatrix& rhs) {
    lhs += rhs;
    return lhs;
}

CMatrix operator-(CMatrix lhs, const CMatrix& rhs) {
    lhs -= rhs;
    return lhs;
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
    if (lhs.dim() != rhs.dim())
        throw StructureError("matrix dimension mismatch in *");
    const std::size_t n = lhs.dim();
    CMatrix p(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex a = lhs(i, k);
            if (a == Complex(0.0, 0.0))
                continue;
            for (std::size_t j = 0; j < n; ++j)
                p(i, j) += a * rhs(k, j);
        }
    return p;
}

CMatrix operator*(Complex s, CMatrix m) {
    m *= s;
    return m;
}

CMatrix operator*(double s, CMatrix m) {
    m *= Complex(s, 0.0);
    return m;
}

double vec_norm(const CVector& x) {
    double s = 0.0;
    for (const auto& v : x)
        s += std::norm(v);
    return std::sqrt(s);
}

Complex euclidean_inner(const CVector& x, const CVector& y) {
    if (x.size() != y.size())
        throw StructureError("vector dimension mismatch");
    Complex s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += std::conj(y[i]) * x[i];
    return s;
}

void vec_scale(CVector& x, Complex s) {
    for (auto& v : x)
        v *= s;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string format_complex(Complex z) {
    std::string s = format_double(z.real());
    if (z.imag() >= 0.0 || std::isnan(z.imag()))
        s += "+";
    s += format_double(z.imag());
    s += "i";
    return s;
}

std::string format_matrix(const CMatrix& m) {
    std::ostringstream os;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        os << "[";
        for (std::size_t j = 0; j < m.dim(); ++j) {
            if (j)
                os << ", ";
            os << format_complex(m(i, j));
        }
        os << "]\n";
    }
    return os.str();
}

} // namespace knr
