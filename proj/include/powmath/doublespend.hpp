// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWMATH_DOUBLESPEND_HPP
#define POWMATH_DOUBLESPEND_HPP

#include <powmath/params.hpp>

#include <cstdint>
#include <optional>

namespace powmath {

struct ConfirmationQuery {
    unsigned z = 1;
    NetworkParams params;
    // Observed elapsed-time factor kappa = tau1 / (z * tau0).
    std::optional<double> kappa;

    void validate() const
    {
        params.validate();
        if (z < 1) throw std::domain_error("ConfirmationQuery: z must be >= 1");
        if (kappa && !(*kappa >= 0.0))
            throw std::domain_error("ConfirmationQuery: kappa must be nonnegative");
    }
};

// Probability that the rogue chain ties from n blocks behind, (q/p)^n.
// Valid for q <= 1/2; equals 1 at q = 1/2 for every n.
double nakamoto_catchup_probability(std::uint64_t n, const NetworkParams& params);

// Success probability of a double spend after z confirmations,
// I_{4pq}(z, 1/2). Requires q < 1/2 strictly.
double double_spend_probability(unsigned z, const NetworkParams& params);

// Large-z equivalent s^z / sqrt(pi (1-s) z) with s = 4pq.
double double_spend_asymptotic(unsigned z, const NetworkParams& params);

// Success probability conditioned on the observed confirmation time factor:
// P(z,k) = 1 - Q(z, kzq/p) + (q/p)^z e^{kz(p-q)/p} Q(z, kz).
double double_spend_probability_conditional(const ConfirmationQuery& query);

// Least z >= 1 with double_spend_probability(z) <= max_risk.
unsigned confirmations_for_risk(double max_risk, const NetworkParams& params);

} // namespace powmath

#endif // POWMATH_DOUBLESPEND_HPP
