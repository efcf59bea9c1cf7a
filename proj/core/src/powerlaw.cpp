#include "lfrgen/random/powerlaw.hpp"

#include <algorithm>
#include <cmath>

namespace lfrgen {

void PldParams::validate() const {
    if (a < 1)
        throw ValidationError("Pld lower limit must be >= 1");
    if (b <= a)
        throw ValidationError("Pld upper limit must exceed the lower limit");
    if (!(gamma >= 1.0))
        throw ValidationError("Pld exponent must be >= 1");
}

PldDistribution::PldDistribution(PldParams params) : params_(params) {
    params_.validate();
    const auto support = static_cast<std::size_t>(params_.b - params_.a);
    cdf_.resize(support);

    // Kahan-compensated prefix sums keep the normalizer exact enough even
    // for supports far beyond 1e6 values.
    double sum = 0.0, carry = 0.0;
    for (std::size_t i = 0; i < support; ++i) {
        const double w =
            std::pow(static_cast<double>(params_.a + i), -params_.gamma);
        const double y = w - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
        cdf_[i] = sum;
    }
    for (auto& c : cdf_)
        c /= sum;
    cdf_.back() = 1.0;
}

std::uint64_t PldDistribution::inverse_cdf(double u) const {
    if (!(u >= 0.0) || u >= 1.0)
        throw ValidationError("inverse_cdf argument must lie in [0, 1)");
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return params_.a + static_cast<std::uint64_t>(it - cdf_.begin());
}

double PldDistribution::pmf(std::uint64_t k) const {
    if (k < params_.a || k >= params_.b)
        return 0.0;
    const auto i = static_cast<std::size_t>(k - params_.a);
    return i == 0 ? cdf_[0] : cdf_[i] - cdf_[i - 1];
}

std::uint64_t pld_inverse_cdf(double u, const PldParams& params) {
    return PldDistribution(params).inverse_cdf(u);
}

DegreeSequence sample_monotonic_pld(std::uint64_t n, const PldParams& params, Rng& rng) {
    if (n < 1)
        throw ValidationError("sample_monotonic_pld requires n >= 1");
    PldDistribution dist(params);

    // Order statistics of n uniforms via exponential spacings: with
    // E_1..E_{n+1} i.i.d. Exp(1), the normalized prefix sums are the sorted
    // uniforms U_(1) <= ... <= U_(n) < 1.
    std::vector<double> prefix(n);
    double sum = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        sum += -std::log(rng.positive_real());
        prefix[i] = sum;
    }
    sum += -std::log(rng.positive_real());

    DegreeSequence out(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        double u = prefix[i] / sum;
        if (u >= 1.0)
            u = std::nextafter(1.0, 0.0);
        out[i] = dist.inverse_cdf(u);
    }
    return out;
}

DegreeSequence sample_monotonic_pld(std::uint64_t n, const PldParams& params,
                                    std::uint64_t seed) {
    Rng rng(seed);
    return sample_monotonic_pld(n, params, rng);
}

} // namespace lfrgen
