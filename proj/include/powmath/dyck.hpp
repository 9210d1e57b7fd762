// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWMATH_DYCK_HPP
#define POWMATH_DYCK_HPP

#include <powmath/params.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace powmath {

// A balanced word over {S, H} whose every prefix holds at least as many S as
// H. Stored compactly: bit i of bits set means letter i is S.
struct DyckWord {
    uint32_t bits = 0;
    unsigned n = 0;

    std::string letters() const;
    bool operator==(const DyckWord&) const = default;
};

// True iff the word is balanced over {S, H} and every prefix has #S >= #H.
// Decides any sequence; letters outside the alphabet make it false.
bool is_dyck(std::string_view word);

// All Dyck words of half-length n in lexicographic letter order (H before
// S), built depth first with prefix pruning. n > 15 exceeds the enumeration
// budget and throws std::length_error.
std::vector<DyckWord> enumerate_dyck(unsigned n);

// One complete attack cycle of the block-withholding strategy, classified by
// its grammar: H, SHH, SHS, or SS w H with w a Dyck word.
enum class CycleClass { H, SHH, SHS, SSwH };

struct AttackCycleWord {
    std::string letters;
    CycleClass cycle_class = CycleClass::H;
    double probability = 0.0;
    // Blocks the cycle appends to the official chain.
    unsigned official_length = 0;
    // Expected official blocks credited to the attacker; fractional in the
    // fork-competition cycle whose outcome is a gamma-weighted split.
    double attacker_blocks = 0.0;
};

// All attack cycles of letter length <= max_len, deterministic order (H,
// SHH, SHS, then SS w H by growing length and lexicographic w). The inner
// Dyck budget bounds max_len by 33; beyond that throws std::length_error.
std::vector<AttackCycleWord> enumerate_sm_cycles(unsigned max_len, const NetworkParams& params);

// Upper bound on the probability mass of cycles longer than max_len,
// geometric from the Catalan term ratio; needs no enumeration.
double attack_cycle_tail_bound(unsigned max_len, const NetworkParams& params);

// Rigorous enclosure of the official-chain share E[Z]/E[L] from class-wise
// expectation sums truncated at max_len; the closed-form value must land
// inside. Needs max_len >= 3 so the fixed-length classes are covered
// (std::length_error below that).
struct HashrateInterval {
    double lower = 0.0;
    double upper = 1.0;
};

HashrateInterval apparent_hashrate_by_enumeration(const NetworkParams& params, unsigned max_len);

} // namespace powmath

#endif // POWMATH_DYCK_HPP
