#include "knr/cubic_form.hpp"

#include "knr/krein.hpp"

#include <cmath>

namespace knr {

namespace {

// linear form alpha*u + beta*v + delta*w
struct Lin {
    Complex a, b, d;
};

// product of three linear forms, expanded into the 10 cubic monomials
CubicForm triple_product(const Lin& x, const Lin& y, const Lin& z, Complex scale) {
    CubicForm out;
    const Complex cx[3] = {x.a, x.b, x.d};
    const Complex cy[3] = {y.a, y.b, y.d};
    const Complex cz[3] = {z.a, z.b, z.d};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                int deg[3] = {0, 0, 0};
                ++deg[i];
                ++deg[j];
                ++deg[k];
                for (std::size_t m = 0; m < CubicForm::monomials.size(); ++m) {
                    const auto& mono = CubicForm::monomials[m];
                    if (mono[0] == deg[0] && mono[1] == deg[1] && mono[2] == deg[2]) {
                        out.coef[m] += scale * cx[i] * cy[j] * cz[k];
                        break;
                    }
                }
            }
    return out;
}

} // namespace

Complex CubicForm::eval(double u, double v, double w) const {
    Complex s = 0.0;
    for (std::size_t m = 0; m < monomials.size(); ++m) {
        const auto& mono = monomials[m];
        double term = 1.0;
        for (int k = 0; k < mono[0]; ++k)
            term *= u;
        for (int k = 0; k < mono[1]; ++k)
            term *= v;
        for (int k = 0; k < mono[2]; ++k)
            term *= w;
        s += coef[m] * term;
    }
    return s;
}

double CubicForm::max_coef() const {
    double m = 0.0;
    for (const auto& c : coef)
        m = std::max(m, std::abs(c));
    return m;
}

CubicForm CubicForm::boundary_cubic(const CMatrix& B, const Metric& J) {
    if (B.dim() != 3 || J.dim() != 3)
        throw StructureError("boundary_cubic expects a 3x3 block");
    auto [re, im] = cartesian_decompose(B, J);
    Lin lin[3][3];
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            lin[i][j] = Lin{re(i, j), im(i, j), (i == j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0)};

    // Leibniz over S_3
    const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                             {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
    const double signs[6] = {1.0, 1.0, 1.0, -1.0, -1.0, -1.0};
    CubicForm out;
    for (int p = 0; p < 6; ++p) {
        const CubicForm term = triple_product(lin[0][perms[p][0]], lin[1][perms[p][1]],
                                              lin[2][perms[p][2]], Complex(signs[p], 0.0));
        for (std::size_t m = 0; m < out.coef.size(); ++m)
            out.coef[m] += term.coef[m];
    }
    return out;
}

} // namespace knr
