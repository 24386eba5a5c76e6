#pragma once

#include "knr/classify.hpp"
#include "knr/cubic_form.hpp"
#include "knr/tridiagonal.hpp"
#include "knr/types.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace knr {

/// Monte Carlo image of one sign class of the range. Every emitted point is
/// [A x, x]_J for a vector scaled to [x,x]_J = +-1; for the minus class the
/// points are negated so the cloud lives in -W_-. Points beyond
/// 1e3 * max(1, |A|_F) are clipped out of the cloud with a count kept.
struct SampleCloud {
    std::vector<std::pair<Complex, int>> points; ///< (value, sign)
    std::uint64_t seed = 0;
    std::size_t count = 0;   ///< requested samples
    int sign = +1;
    std::size_t clipped = 0;
    std::size_t rejected = 0; ///< near-neutral draws discarded before scaling
};

SampleCloud sample_range(const CMatrix& A, const Metric& J, std::size_t n_samples,
                         int sign, std::uint64_t seed);

/// Containment verdict of a sample cloud against a classified region. The
/// violation is measured with the signed membership slack of the region
/// (dimensionless for hyperbolic discs, projection units for flat/ray
/// shapes); a sample violates when its slack drops below -tol. Containment
/// can only be refuted this way, never proven; the report says so.
struct ContainmentReport {
    double worst_violation = 0.0;
    std::vector<Complex> violating_samples; ///< capped at 16
    std::size_t violation_count = 0;
    bool verdict = false;
    std::size_t checked = 0;
    std::string note;
};

ContainmentReport containment_check(const SampleCloud& cloud,
                                    const RangeClassification& classification,
                                    double tol);

/// Worst distance between the sampled support extremes and lambda_L/lambda_R
/// across the valid angles of the grid (both clouds are drawn once with the
/// given seed). Throws when no grid angle is valid.
double support_consistency(const CMatrix& A, const Metric& J,
                           const std::vector<double>& grid, std::size_t n_samples,
                           std::uint64_t seed);

/// Max relative error, over random (u,v,w) triples, between the sextic curve
/// form of the order-6 matrix and the product of its two block cubics.
double factor_check6(const TridiagonalSpec& spec, int trials, std::uint64_t seed = 42);

/// Same check against an explicitly supplied factor pair.
double factor_check6_against(const TridiagonalSpec& spec, const CubicForm& f1,
                             const CubicForm& f2, int trials, std::uint64_t seed = 42);

/// Deterministic standard Gaussian stream (Box-Muller over mt19937_64),
/// shared by the oracles so results do not depend on the standard library's
/// distribution internals.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}
    double next();
    Complex next_complex();

private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace knr
