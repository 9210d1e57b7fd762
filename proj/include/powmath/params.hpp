// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWMATH_PARAMS_HPP
#define POWMATH_PARAMS_HPP

#include <stdexcept>

namespace powmath {

// Shared model parameters. q is the rogue miner's relative hashrate, gamma
// the fraction of honest hashrate that mines on the rogue branch during a
// fork competition, tau0 the inter-block target time, b the block reward.
struct NetworkParams {
    double q = 0.1;
    double gamma = 0.0;
    double tau0 = 600.0;
    double b = 12.5;

    double p() const { return 1.0 - q; }
    double lambda() const { return q / p(); }
    // Combined network rate splits p:q between honest and rogue miners.
    double honest_rate() const { return p() / tau0; }
    double rogue_rate() const { return q / tau0; }

    void validate() const
    {
        if (!(q > 0.0) || !(q < 1.0))
            throw std::domain_error("NetworkParams: q must lie in (0,1)");
        if (!(gamma >= 0.0) || !(gamma <= 1.0))
            throw std::domain_error("NetworkParams: gamma must lie in [0,1]");
        if (!(tau0 > 0.0))
            throw std::domain_error("NetworkParams: tau0 must be positive");
        if (!(b > 0.0))
            throw std::domain_error("NetworkParams: b must be positive");
    }

    // Most closed forms are ruin/renewal results valid only for a minority
    // attacker; callers that need q < 1/2 check through here.
    void require_minority() const
    {
        validate();
        if (!(q < 0.5))
            throw std::domain_error("NetworkParams: operation requires q < 1/2");
    }
};

} // namespace powmath

#endif // POWMATH_PARAMS_HPP
