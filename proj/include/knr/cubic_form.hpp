#pragma once

#include "knr/types.hpp"

#include <array>

namespace knr {

/// Homogeneous cubic in (u, v, w) with complex coefficients, stored in the
/// fixed monomial order u^3, u^2 v, u^2 w, u v^2, u v w, u w^2, v^3, v^2 w,
/// v w^2, w^3.
struct CubicForm {
    std::array<Complex, 10> coef{};

    static constexpr std::array<std::array<int, 3>, 10> monomials = {{
        {3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {1, 1, 1},
        {1, 0, 2}, {0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {0, 0, 3},
    }};

    Complex eval(double u, double v, double w) const;
    double max_coef() const;

    /// det(u Re_J(B) + v Im_J(B) + w I) for a 3x3 block B under metric J,
    /// expanded symbolically (exact in the coefficients of B).
    static CubicForm boundary_cubic(const CMatrix& B, const Metric& J);
};

} // namespace knr
