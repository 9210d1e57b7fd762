// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWMATH_DISTRIBUTION_HPP
#define POWMATH_DISTRIBUTION_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace powmath {

// A discrete law on the nonnegative integers given by its pmf plus a
// rigorous tail bound: tail_mass_beyond(k) must upper-bound the true mass
// above k so support_bound(eps) is a certified truncation point.
class DiscreteDistribution {
public:
    using PmfFn = std::function<double(std::uint64_t)>;
    using TailFn = std::function<double(std::uint64_t)>;

    DiscreteDistribution(PmfFn pmf, TailFn tail_bound)
        : pmf_(std::move(pmf)), tail_(std::move(tail_bound))
    {
    }

    double pmf(std::uint64_t k) const { return pmf_(k); }

    // Smallest bound found by doubling scan with mass above it < eps.
    std::uint64_t support_bound(double eps) const
    {
        if (!(eps > 0.0)) throw std::domain_error("support_bound: eps must be positive");
        std::uint64_t k = 1;
        while (tail_(k) >= eps) {
            if (k > (std::uint64_t{1} << 40))
                throw std::length_error("support_bound: tail does not fall below eps");
            k *= 2;
        }
        // Binary search the first qualifying index in (k/2, k].
        std::uint64_t lo = k / 2, hi = k;
        while (lo + 1 < hi) {
            std::uint64_t mid = lo + (hi - lo) / 2;
            (tail_(mid) < eps ? hi : lo) = mid;
        }
        return hi;
    }

    // Inverse-CDF table sampler over the truncated support; u in [0,1).
    // Leftover mass beyond the bound maps to the last table entry.
    std::vector<double> cdf_table(double eps = 1e-12) const
    {
        std::uint64_t n = support_bound(eps);
        std::vector<double> cdf(n + 1);
        double acc = 0.0;
        for (std::uint64_t k = 0; k <= n; ++k) {
            acc += pmf_(k);
            cdf[k] = acc;
        }
        return cdf;
    }

private:
    PmfFn pmf_;
    TailFn tail_;
};

} // namespace powmath

#endif // POWMATH_DISTRIBUTION_HPP
