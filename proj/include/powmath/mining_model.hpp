// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWMATH_MINING_MODEL_HPP
#define POWMATH_MINING_MODEL_HPP

#include <powmath/distribution.hpp>
#include <powmath/params.hpp>

#include <cstdint>

namespace powmath {

// Density of the exponential inter-block time, rate * exp(-rate * t).
double interblock_time_density(double t, double rate);

// Poisson mass P[N(t) = n] at mean rate*t, computed in log space.
double blocks_mined_pmf(std::uint64_t n, double t, double rate);

// Mass of the rogue miner's block count while the honest network mines n
// blocks: negative binomial, p^n q^k binom(k+n-1, k), in log space.
double attacker_blocks_pmf(std::uint64_t k, std::uint64_t n, const NetworkParams& params);

// Exact n-th Catalan number; overflow error where uint64 is exceeded (n=37).
std::uint64_t catalan_number(unsigned n);

// Generating value C(x) = (1 - sqrt(1-4x))/(2x) on [0, 1/4], limit 1 at 0.
double catalan_generating_value(double x);

enum class CatalanKind { first, second, third };

// The three Catalan laws attached to the stubborn-family cycle lengths.
//   first:  P[X=n] = C_n p (pq)^n
//   second: P[X=0] = p, P[X=n] = C_{n-1} (pq)^n          (n >= 1)
//   third:  P[X=0] = p, P[X=1] = pq + pq^2, P[X=n] = p q^2 C_{n-1} (pq)^{n-1}  (n >= 2)
DiscreteDistribution catalan_distribution(CatalanKind kind, const NetworkParams& params);

} // namespace powmath

#endif // POWMATH_MINING_MODEL_HPP
