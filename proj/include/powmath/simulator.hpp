// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWMATH_SIMULATOR_HPP
#define POWMATH_SIMULATOR_HPP

#include <powmath/nakamoto.hpp>
#include <powmath/params.hpp>
#include <powmath/strategies.hpp>

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace powmath {

// Double-spend attempt: premine one secret block on top of the paid-for
// chain, race through z confirmations, abandon at lag A.
struct DoubleSpendScenario {
    unsigned z = 1;
    unsigned A = 1;
    double v = 0.0;

    DoubleSpendPlan plan(const NetworkParams& params) const
    {
        return DoubleSpendPlan{z, A, v, params};
    }
};

struct SimulationConfig {
    NetworkParams params;
    std::variant<StrategySpec, DoubleSpendScenario> strategy = StrategySpec{};

    // Horizon per trial: a cycle count or a wall-clock budget in simulated
    // seconds; exactly one must be positive. With difficulty adjustment on,
    // the cycle horizon counts cycles after a three-window warm-up so the
    // estimators see the post-adjustment regime; the time horizon always
    // runs from t = 0.
    std::uint64_t cycles = 0;
    double sim_time = 0.0;

    bool difficulty_adjustment = false;
    unsigned adjustment_window = 2016;

    std::uint64_t seed = 1;
    unsigned trials = 1;

    bool estimate_time_to_profitability = false;

    // Collect the first trial's per-cycle wall durations, for
    // distributional tests; off by default to keep reports small.
    bool record_cycle_durations = false;

    void validate() const;
};

// Point estimate with a standard error from cycle batches (simulation runs)
// or independent trials (races).
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

struct TimeToProfitability {
    // First simulated time at which the trial-averaged cumulative revenue
    // overtakes the honest baseline q b t / tau0.
    double seconds = 0.0;
    double std_error = 0.0;
};

struct SimulationReport {
    // Attack revenue rate in coins per second.
    Estimate revenue_ratio;
    // Official-chain share E[Z]/E[L].
    Estimate apparent_hashrate;
    // Stationary difficulty factor; absent for double-spend runs.
    std::optional<Estimate> delta;
    Estimate mean_cycle_duration;
    // Success frequency; only set for double-spend runs.
    std::optional<Estimate> success_frequency;
    // Set when the config asks for it and the averaged revenue curve
    // crosses the honest baseline within the horizon; empty is the
    // not-profitable marker.
    std::optional<TimeToProfitability> time_to_profitability;

    std::uint64_t cycles_executed = 0;
    std::uint64_t seed = 0;
    double total_time = 0.0;
    double final_difficulty = 1.0;
    std::vector<double> cycle_durations;
};

// Monte Carlo estimate. Trials are spread over OpenMP threads, each trial on
// its own deterministic substream enumerated from the master seed; per-trial
// results merge in trial order, so the report does not depend on the thread
// count.
SimulationReport run(const SimulationConfig& config, int num_threads = 0);

// Serial engine kept as a reference; must reproduce run() exactly.
SimulationReport run_reference(const SimulationConfig& config);

// Estimated time until a block-withholding strategy's cumulative revenue
// first exceeds the honest counterfactual, averaged over trials. Empty when
// no crossing happens within the horizon.
std::optional<TimeToProfitability> estimate_time_to_profitability(const SimulationConfig& config);

// First-lead stopping time of two independent Poisson processes: the race
// ends at sigma = inf{t : N(t) = N'(t) + 1}, which is integrable only for
// alpha > alpha_prime.
struct PoissonRaceStats {
    Estimate duration;
    Estimate loser_count;
    Estimate winner_count;
    std::uint64_t trials = 0;
    // The lead at sigma equals exactly one in every trial.
    bool lead_always_one = true;
};

PoissonRaceStats poisson_race_statistics(double alpha, double alpha_prime,
                                         std::uint64_t seed, std::uint64_t trials);

// Per-attempt outcome statistics for a double-spend plan. Uncapped plans
// stop at lag 10^4 and fold the analytic residual catch-up mass into the
// success estimate.
struct DoubleSpendOutcome {
    Estimate success_probability;
    Estimate mean_revenue;
    Estimate mean_duration;
    Estimate revenue_rate;
};

DoubleSpendOutcome estimate_double_spend_success(const DoubleSpendPlan& plan,
                                                 std::uint64_t seed, std::uint64_t trials);

} // namespace powmath

#endif // POWMATH_SIMULATOR_HPP
