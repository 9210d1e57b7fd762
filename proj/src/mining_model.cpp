// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powmath/mining_model.hpp>

#include <powmath/specfun.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace powmath {

double interblock_time_density(double t, double rate)
{
    if (!(rate > 0.0)) throw std::domain_error("interblock_time_density: rate must be positive");
    if (!(t >= 0.0)) throw std::domain_error("interblock_time_density: t must be nonnegative");
    return rate * std::exp(-rate * t);
}

double blocks_mined_pmf(std::uint64_t n, double t, double rate)
{
    if (!(rate > 0.0)) throw std::domain_error("blocks_mined_pmf: rate must be positive");
    if (!(t >= 0.0)) throw std::domain_error("blocks_mined_pmf: t must be nonnegative");
    const double mu = rate * t;
    if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
    const double dn = static_cast<double>(n);
    return std::exp(dn * std::log(mu) - mu - log_gamma(dn + 1.0));
}

double attacker_blocks_pmf(std::uint64_t k, std::uint64_t n, const NetworkParams& params)
{
    params.validate();
    if (n == 0) return k == 0 ? 1.0 : 0.0;
    // Negative binomial: the k-th rogue block falls among n honest ones with
    // mass p^n q^k binom(k+n-1, k).
    const double dk = static_cast<double>(k);
    const double dn = static_cast<double>(n);
    const double ln_choose = log_gamma(dk + dn) - log_gamma(dk + 1.0) - log_gamma(dn);
    return std::exp(dn * std::log(params.p()) + dk * std::log(params.q) + ln_choose);
}

std::uint64_t catalan_number(unsigned n)
{
    // C_{m+1} = C_m * 2(2m+1) / (m+2); the division is exact. C_36 is the
    // last value fitting in 64 bits.
    unsigned __int128 cur = 1;
    for (unsigned m = 0; m < n; ++m) {
        cur = cur * 2 * (2 * m + 1);
        cur /= m + 2;
        if (cur > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("catalan_number: value exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(cur);
}

double catalan_generating_value(double x)
{
    if (!(x >= 0.0) || x > 0.25)
        throw std::domain_error("catalan_generating_value: x must lie in [0, 1/4]");
    // 2 / (1 + sqrt(1-4x)) equals (1 - sqrt(1-4x)) / (2x) without the
    // cancellation at small x.
    return 2.0 / (1.0 + std::sqrt(1.0 - 4.0 * x));
}

namespace {

double log_catalan(double n)
{
    // ln C_n = ln Gamma(2n+1) - ln Gamma(n+2) - ln Gamma(n+1).
    return log_gamma(2.0 * n + 1.0) - log_gamma(n + 2.0) - log_gamma(n + 1.0);
}

} // namespace

DiscreteDistribution catalan_distribution(CatalanKind kind, const NetworkParams& params)
{
    params.require_minority();
    const double p = params.p();
    const double q = params.q;
    const double x = p * q;

    DiscreteDistribution::PmfFn pmf;
    switch (kind) {
    case CatalanKind::first:
        pmf = [p, x](std::uint64_t n) {
            const double dn = static_cast<double>(n);
            return std::exp(log_catalan(dn) + std::log(p) + dn * std::log(x));
        };
        break;
    case CatalanKind::second:
        pmf = [p, x](std::uint64_t n) {
            if (n == 0) return p;
            const double dn = static_cast<double>(n);
            return std::exp(log_catalan(dn - 1.0) + dn * std::log(x));
        };
        break;
    case CatalanKind::third:
        pmf = [p, q, x](std::uint64_t n) {
            if (n == 0) return p;
            if (n == 1) return p * q + p * q * q;
            const double dn = static_cast<double>(n);
            return std::exp(std::log(p * q * q) + log_catalan(dn - 1.0) + (dn - 1.0) * std::log(x));
        };
        break;
    default:
        throw std::invalid_argument("catalan_distribution: unknown kind");
    }

    // Successive-term ratios never exceed 4pq < 1 for any of the three laws,
    // so the mass above k is at most pmf(k+1) summed geometrically.
    DiscreteDistribution::TailFn tail = [pmf, x](std::uint64_t k) {
        return pmf(k + 1) / (1.0 - 4.0 * x);
    };
    return DiscreteDistribution(pmf, tail);
}

} // namespace powmath
