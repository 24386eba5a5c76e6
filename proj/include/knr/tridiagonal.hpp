#pragma once

#include "knr/cubic_form.hpp"
#include "knr/hyperbola.hpp"
#include "knr/types.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace knr {

/// Tridiagonal matrix data with (quasi-)biperiodic main diagonal: diagonal
/// amplitude a (entries alternate between +a and -a in the pattern fixed by
/// the order's parity), first superdiagonal b and first subdiagonal c.
struct TridiagonalSpec {
    std::size_t order = 0;
    double a = 0.0;
    std::vector<Complex> b;
    std::vector<Complex> c;

    void validate() const;
    CMatrix to_matrix() const;
    /// The signature metric that pairs with this diagonal pattern.
    Metric metric() const;
    static Metric metric_for_order(std::size_t m);
    /// Diagonal sign pattern (+1/-1 per slot).
    static std::vector<int> diagonal_pattern(std::size_t m);

    /// Strict centrosymmetry: c_j = b_{m-j} entrywise within tol * scale.
    bool centrosymmetric(double tol = 1e-12) const;
};

/// Shift/rotation normal form A = e^{i tau} T + delta I with T tridiagonal,
/// real diagonal amplitude a >= 0, and the conventional sign pattern.
struct NormalForm {
    TridiagonalSpec spec;
    double tau = 0.0;
    Complex delta{0.0, 0.0};
};

/// Extracts the normal form of a tridiagonal matrix whose shifted diagonal is
/// (quasi-)biperiodic. Throws StructureError when A is not tridiagonal, the
/// metric does not match the conventional pattern, or the shifted diagonal
/// does not alternate.
NormalForm normal_form(const CMatrix& A, const Metric& J);

/// Order-3 certificate: W is a hyperbolic disc with foci at the two square
/// roots of Delta = a^2 + b1 c1 + b2 c2 iff
/// a^2 - 2|Delta| < Tr(A# A) < a^2 + 2|Delta| (strictly).
struct Certificate3 {
    Complex delta{0.0, 0.0};
    double trace_adj = 0.0; ///< Tr(A# A)
    bool verdict = false;
    bool at_boundary = false;
    std::optional<Hyperbola> hyperbola;
    double third_eigenvalue = 0.0; ///< = a
};

Certificate3 certify_order3(const TridiagonalSpec& spec);

/// Order-5 block reduction Q# A Q = R (+) S for centrosymmetric input.
std::pair<CMatrix, CMatrix> block_reduce5(const TridiagonalSpec& spec);

struct Certificate5 {
    Complex delta1{0.0, 0.0}, delta2{0.0, 0.0};
    double m1 = 0.0, m2 = 0.0;
    bool verdict = false;
    std::optional<Hyperbola> h1; ///< absent when degenerate
    bool h1_degenerate = false;
    std::array<Complex, 2> h1_points{}; ///< +-sqrt(delta1) when h1 degenerates
    std::optional<Hyperbola> h2;
};

Certificate5 certify_order5(const TridiagonalSpec& spec);

/// Order-4 block reduction: returns (S_plus, S_minus), the two 2x2 blocks
/// [[a, b1], [b3, +-b2 - a]] whose ranges under diag(1,-1) generate the curve.
std::pair<CMatrix, CMatrix> block_reduce4(const TridiagonalSpec& spec);

enum class Order4Subcase { B2ZeroDisc, Bihyperbolic, NotCertified };

struct Certificate4 {
    Complex delta{0.0, 0.0}, delta_plus{0.0, 0.0}, delta_minus{0.0, 0.0};
    double m = 0.0;
    double m_plus = 0.0, m_minus = 0.0; ///< pairing consistent with the 2x2 theorem
    bool pairing_swapped = false; ///< the +-2a Re(b2) pairing differs between routes
    bool verdict = false;
    Order4Subcase subcase = Order4Subcase::NotCertified;
    Complex b2{0.0, 0.0};
    std::optional<Hyperbola> h_plus, h_minus;
};

Certificate4 certify_order4(const TridiagonalSpec& spec);

/// Order-6 block reduction: returns (S, R_prime), the two 3x3 blocks under
/// metric diag(1,-1,1).
std::pair<CMatrix, CMatrix> block_reduce6(const TridiagonalSpec& spec);

struct Certificate6 {
    bool b3_zero = false;
    Complex focus_sq{0.0, 0.0}; ///< a^2 + b1 b5 + b2 b4
    double trace_s = 0.0;       ///< Tr(J2 S* J2 S)
    bool verdict = false;
    std::optional<Hyperbola> k;
    std::optional<std::pair<CubicForm, CubicForm>> cubic_factors;
};

Certificate6 certify_order6(const TridiagonalSpec& spec);

/// The J-orthogonal reduction matrix Q for m in {4, 5, 6}.
CMatrix reduction_q(std::size_t m);

} // namespace knr
