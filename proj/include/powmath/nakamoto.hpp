// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWMATH_NAKAMOTO_HPP
#define POWMATH_NAKAMOTO_HPP

#include <powmath/params.hpp>

#include <limits>

namespace powmath {

struct DoubleSpendPlan {
    unsigned z = 1;
    // Abandon once the official chain leads by A blocks. kUncapped marks the
    // classical unbounded race; the closed forms degrade gracefully there
    // (lambda^A underflows to 0).
    unsigned A = 1;
    double v = 0.0;
    NetworkParams params;

    static constexpr unsigned kUncapped = std::numeric_limits<unsigned>::max();

    void validate() const
    {
        params.validate();
        if (z < 1) throw std::domain_error("DoubleSpendPlan: z must be >= 1");
        if (A < z) throw std::domain_error("DoubleSpendPlan: A must be >= z");
        if (!(v >= 0.0)) throw std::domain_error("DoubleSpendPlan: v must be nonnegative");
    }
};

// Success probability with the lag capped at A:
// P_A(z) = (P(z) - lambda^A) / (1 - lambda^A), clamped to [0,1].
double a_nakamoto_success_probability(const DoubleSpendPlan& plan);

// Expected revenue in coin units (affine in v with slope P_A(z)).
double a_nakamoto_expected_revenue(const DoubleSpendPlan& plan);

// Expected attack duration in seconds (independent of v).
double a_nakamoto_expected_duration(const DoubleSpendPlan& plan);

// Revenue ratio E[R]/E[T] in coins per second.
double a_nakamoto_revenue_ratio(const DoubleSpendPlan& plan);

// Small-q minimal profitable amount v0 = b q^{-z} / (2 binom(2z-1, z)).
double minimal_profitable_double_spend(unsigned z, const NetworkParams& params);

// Exact break-even amount v*: the unique v where the attack's coins-per-second
// matches honest mining's q b / tau0. Solved from the affine revenue form, so
// v* = (q E[T]/tau0 - E[R at v=0]/b) * b / P_A(z).
double break_even_double_spend(unsigned z, unsigned A, const NetworkParams& params);

} // namespace powmath

#endif // POWMATH_NAKAMOTO_HPP
