#pragma once

#include <cstdint>
#include <vector>

#include "lfrgen/graph.hpp"
#include "lfrgen/random/rng.hpp"

namespace lfrgen {

/// Integer powerlaw distribution Pld[a, b)^gamma:
/// P[X = k] proportional to k^(-gamma) for a <= k < b, 0 otherwise.
struct PldParams {
    std::uint64_t a = 1;  ///< inclusive lower limit
    std::uint64_t b = 2;  ///< exclusive upper limit
    double gamma = 2.0;   ///< exponent magnitude

    void validate() const;
};

/// Precomputed inverse transform for a Pld.
///
/// The normalizer is computed by direct (compensated) summation over the
/// b - a weights; inverse_cdf returns the smallest k with CDF(k) > u.
class PldDistribution {
public:
    explicit PldDistribution(PldParams params);

    const PldParams& params() const noexcept { return params_; }

    std::uint64_t inverse_cdf(double u) const;

    std::uint64_t sample(Rng& rng) const { return inverse_cdf(rng.real()); }

    /// Exact pmf value for k (0 outside the support).
    double pmf(std::uint64_t k) const;

private:
    PldParams params_;
    std::vector<double> cdf_; // cdf_[i] = P[X <= a + i], last entry exactly 1
};

/// Smallest k in [a, b) with CDF(k) > u. Convenience wrapper that builds
/// the table on the fly; hot paths should hold a PldDistribution.
std::uint64_t pld_inverse_cdf(double u, const PldParams& params);

/// Samples n values and returns them sorted non-decreasing, distributed as
/// the order statistics of n i.i.d. Pld draws. Sorted uniforms are produced
/// online from normalized exponential spacings and pushed through the
/// (monotone) inverse CDF, so no sorting step is required.
DegreeSequence sample_monotonic_pld(std::uint64_t n, const PldParams& params, Rng& rng);

DegreeSequence sample_monotonic_pld(std::uint64_t n, const PldParams& params,
                                    std::uint64_t seed);

} // namespace lfrgen
