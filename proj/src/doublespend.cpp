// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powmath/doublespend.hpp>

#include <powmath/specfun.hpp>

#include <cmath>
#include <stdexcept>

namespace powmath {

double nakamoto_catchup_probability(std::uint64_t n, const NetworkParams& params)
{
    params.validate();
    if (params.q > 0.5)
        throw std::domain_error(
            "nakamoto_catchup_probability: the ruin formula needs q <= 1/2");
    const double lambda = params.lambda();
    if (lambda >= 1.0) return 1.0;
    return std::pow(lambda, static_cast<double>(n));
}

double double_spend_probability(unsigned z, const NetworkParams& params)
{
    params.require_minority();
    if (z < 1) throw std::domain_error("double_spend_probability: z must be >= 1");
    return reg_inc_beta(4.0 * params.p() * params.q, static_cast<double>(z), 0.5);
}

double double_spend_asymptotic(unsigned z, const NetworkParams& params)
{
    params.require_minority();
    if (z < 1) throw std::domain_error("double_spend_asymptotic: z must be >= 1");
    const double s = 4.0 * params.p() * params.q;
    const double dz = static_cast<double>(z);
    return std::exp(dz * std::log(s) - 0.5 * std::log(M_PI * (1.0 - s) * dz));
}

double double_spend_probability_conditional(const ConfirmationQuery& query)
{
    query.validate();
    if (!query.kappa) return double_spend_probability(query.z, query.params);
    query.params.require_minority();

    const double kappa = *query.kappa;
    const double z = static_cast<double>(query.z);
    const double p = query.params.p();
    const double q = query.params.q;
    if (kappa == 0.0) return std::pow(query.params.lambda(), z);

    const double miss = 1.0 - reg_inc_gamma_upper(z, kappa * z * q / p);
    // The compensating term pairs a huge exponential with a tiny upper tail;
    // combine them in log space.
    const double ln_comp = z * std::log(query.params.lambda())
                           + kappa * z * (p - q) / p
                           + log_reg_inc_gamma_upper(z, kappa * z);
    return miss + std::exp(ln_comp);
}

unsigned confirmations_for_risk(double max_risk, const NetworkParams& params)
{
    params.require_minority();
    if (!(max_risk > 0.0) || !(max_risk < 1.0))
        throw std::domain_error("confirmations_for_risk: risk must lie in (0,1)");
    // Success probability decays geometrically in z, so the scan is short
    // for any realistic risk level; the cap guards pathological inputs.
    for (unsigned z = 1; z <= 1000000; ++z) {
        if (double_spend_probability(z, params) <= max_risk) return z;
    }
    throw std::length_error("confirmations_for_risk: no z within scan budget");
}

} // namespace powmath
