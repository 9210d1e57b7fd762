// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWMATH_STRATEGIES_HPP
#define POWMATH_STRATEGIES_HPP

#include <powmath/params.hpp>

#include <optional>
#include <string>
#include <vector>

namespace powmath {

enum class StrategyKind { Honest, SelfishMining, LeadStubborn, EqualForkStubborn, ATrailing };

std::string strategy_kind_name(StrategyKind kind);

struct StrategySpec {
    StrategyKind kind = StrategyKind::Honest;
    // Abandon threshold for the trailing strategy; required there, rejected
    // elsewhere.
    std::optional<unsigned> A;

    void validate() const
    {
        if (kind == StrategyKind::ATrailing) {
            if (!A) throw std::invalid_argument("StrategySpec: ATrailing requires A");
            if (*A < 1) throw std::domain_error("StrategySpec: A must be >= 1");
        } else if (A) {
            throw std::invalid_argument("StrategySpec: A is only meaningful for ATrailing");
        }
    }
};

struct ProfitabilityResult {
    double revenue_ratio_over_honest = 1.0;
    std::optional<double> apparent_hashrate;
    bool is_profitable = false;
};

// Revenue rate of honest mining with hashrate share q, in coins per second.
double honest_revenue_ratio(const NetworkParams& params);

// Long-run share q' of official blocks mined by the selfish miner.
double selfish_apparent_hashrate(const NetworkParams& params);

// f(gamma, p, q) = (1-gamma)/gamma * (1 - (1 - sqrt(1-4(1-gamma)pq))/(2q)),
// extended by its limits p/(p-q) at gamma=0 and 0 at gamma=1.
double stubborn_f(const NetworkParams& params);

// Revenue ratio over honest mining for the strategy, post difficulty
// adjustment. For SelfishMining the result also carries q'.
ProfitabilityResult strategy_revenue_ratio(const StrategySpec& spec, const NetworkParams& params);

struct DominanceCell {
    double q = 0.0;
    double gamma = 0.0;
    StrategySpec winner;
    double winner_ratio = 1.0;
};

// Argmax strategy per (q, gamma) cell among Honest, SelfishMining,
// LeadStubborn, EqualForkStubborn and ATrailing over A_values; ties break
// toward the earlier kind in that fixed order.
std::vector<DominanceCell> dominance_grid(const std::vector<double>& q_grid,
                                          const std::vector<double>& gamma_grid,
                                          const std::vector<unsigned>& A_values);

namespace detail {

// [n] = (1-lambda^n)/(1-lambda), evaluated as the geometric sum when lambda
// is within 1e-6 of 1.
double geometric_bracket(double lambda, unsigned n);

// Tie-splitting kernel of the equal-fork ratio: f3 = (1-gamma)/gamma
// - (1 - sqrt(1-4(1-gamma)pq)) / (2 q gamma), limits q/(p-q) at gamma=0
// and 0 at gamma=1.
double equal_fork_f(const NetworkParams& params);

// Exact revenue ratio of the trailing strategy with abandon threshold A;
// reduces to the lead-stubborn ratio at A=1.
double trailing_ratio(const NetworkParams& params, unsigned A);

} // namespace detail

} // namespace powmath

#endif // POWMATH_STRATEGIES_HPP
