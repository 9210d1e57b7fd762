// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWMATH_RNG_HPP
#define POWMATH_RNG_HPP

#include <cstdint>

namespace powmath {

// splitmix64 step; used to expand seeds into full engine states.
inline uint64_t splitmix64_next(uint64_t& state)
{
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++ with seeding via splitmix64. Substreams derived from a master
// seed and a stream index are statistically independent for our purposes and,
// crucially, reproducible regardless of how work is scheduled across threads.
class Xoshiro256pp {
public:
    using result_type = uint64_t;

    explicit Xoshiro256pp(uint64_t seed = 0)
    {
        uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64_next(sm);
    }

    static Xoshiro256pp substream(uint64_t master_seed, uint64_t stream_index)
    {
        return Xoshiro256pp(master_seed ^ (0x9E3779B97F4A7C15ULL * (stream_index + 1)));
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ULL; }

    result_type operator()()
    {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0,1) with 53 random bits.
    double uniform()
    {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double prob) { return uniform() < prob; }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t s_[4];
};

} // namespace powmath

#endif // POWMATH_RNG_HPP
