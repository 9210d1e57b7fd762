// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powmath/dyck.hpp>

#include <powmath/mining_model.hpp>
#include <powmath/specfun.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace powmath {

namespace {

constexpr unsigned kDyckBudget = 15;

double log_catalan(double n)
{
    return log_gamma(2.0 * n + 1.0) - log_gamma(n + 2.0) - log_gamma(n + 1.0);
}

// Mass of one SS w H class member times its Catalan multiplicity:
// C_m q^2 p (pq)^m; evaluated in log space so large m stays finite.
double sswh_class_mass(unsigned m, double p, double q)
{
    const double dm = static_cast<double>(m);
    return std::exp(log_catalan(dm) + std::log(q * q * p) + dm * std::log(p * q));
}

} // namespace

std::string DyckWord::letters() const
{
    std::string out(2 * static_cast<size_t>(n), 'H');
    for (unsigned i = 0; i < 2 * n; ++i)
        if (bits >> i & 1) out[i] = 'S';
    return out;
}

bool is_dyck(std::string_view word)
{
    long balance = 0;
    for (char ch : word) {
        if (ch == 'S') ++balance;
        else if (ch == 'H') --balance;
        else return false;
        if (balance < 0) return false;
    }
    return balance == 0;
}

std::vector<DyckWord> enumerate_dyck(unsigned n)
{
    if (n > kDyckBudget) throw std::length_error("enumerate_dyck: n exceeds enumeration budget");

    std::vector<DyckWord> out;
    out.reserve(catalan_number(n));

    // Depth-first, H before S, so the output is already in letter order.
    struct Frame {
        uint32_t bits;
        unsigned pos, s, h;
    };
    std::vector<Frame> stack{{0, 0, 0, 0}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.pos == 2 * n) {
            out.push_back({f.bits, n});
            continue;
        }
        // Push S first so the H branch is explored first.
        if (f.s < n)
            stack.push_back({f.bits | (uint32_t{1} << f.pos), f.pos + 1, f.s + 1, f.h});
        if (f.h < f.s)
            stack.push_back({f.bits, f.pos + 1, f.s, f.h + 1});
    }
    return out;
}

std::vector<AttackCycleWord> enumerate_sm_cycles(unsigned max_len, const NetworkParams& params)
{
    params.validate();
    if (max_len < 1) throw std::domain_error("enumerate_sm_cycles: max_len must be >= 1");
    if (max_len > 2 * kDyckBudget + 3)
        throw std::length_error("enumerate_sm_cycles: max_len exceeds enumeration budget");

    const double p = params.p();
    const double q = params.q;
    const double gamma = params.gamma;

    std::vector<AttackCycleWord> out;
    out.push_back({"H", CycleClass::H, p, 1, 0.0});
    if (max_len >= 3) {
        out.push_back({"SHH", CycleClass::SHH, q * p * p, 2, gamma});
        out.push_back({"SHS", CycleClass::SHS, q * q * p, 2, 2.0});
    }
    // SS w H has length 2m + 3 for a Dyck word w of half-length m; the walk
    // stays two ahead through w, so the attacker keeps every block.
    for (unsigned m = 0; 2 * m + 3 <= max_len; ++m) {
        const double word_prob = q * q * p * std::pow(p * q, static_cast<double>(m));
        for (const DyckWord& w : enumerate_dyck(m)) {
            AttackCycleWord cycle;
            cycle.letters = "SS" + w.letters() + "H";
            cycle.cycle_class = CycleClass::SSwH;
            cycle.probability = word_prob;
            cycle.official_length = m + 2;
            cycle.attacker_blocks = static_cast<double>(m) + 2.0;
            out.push_back(std::move(cycle));
        }
    }
    return out;
}

double attack_cycle_tail_bound(unsigned max_len, const NetworkParams& params)
{
    params.require_minority();
    if (max_len < 1) throw std::domain_error("attack_cycle_tail_bound: max_len must be >= 1");
    const double p = params.p();
    const double q = params.q;
    if (max_len < 3) return q;
    // Classes H, SHH, SHS are covered; only SS w H words with half-length
    // m > M remain. Term ratios never exceed 4pq, so sum geometrically.
    const unsigned M = (max_len - 3) / 2;
    return sswh_class_mass(M + 1, p, q) / (1.0 - 4.0 * p * q);
}

HashrateInterval apparent_hashrate_by_enumeration(const NetworkParams& params, unsigned max_len)
{
    params.require_minority();
    if (max_len < 3)
        throw std::length_error("apparent_hashrate_by_enumeration: max_len too small");

    const double p = params.p();
    const double q = params.q;
    const unsigned M = (max_len - 3) / 2;

    // Class-wise expectation sums; every SS w H word of half-length m shares
    // probability and bookkeeping, so the C_m words collapse into one term.
    double z_sum = params.gamma * q * p * p + 2.0 * q * q * p;
    double l_sum = p + 2.0 * q * p * p + 2.0 * q * q * p;
    for (unsigned m = 0; m <= M; ++m) {
        const double mass = sswh_class_mass(m, p, q);
        z_sum += (m + 2.0) * mass;
        l_sum += (m + 2.0) * mass;
    }

    // Length-weighted tail: (m+2) C_m q^2 p (pq)^m for m > M. Successive
    // terms shrink by 2pq (2m+1)(m+3)/(m+2)^2 <= 4pq for every m, so the
    // geometric sum with the universal ratio majorizes the tail at any
    // truncation point.
    const double tail_l =
        (static_cast<double>(M) + 3.0) * sswh_class_mass(M + 1, p, q) / (1.0 - 4.0 * p * q);

    // Missing words satisfy Z = L, so the extremes are all-attacker and
    // no-attacker tails. A fixed pad of a few hundred ulps keeps the
    // enclosure honest where the truncation error underflows below the
    // rounding noise of the sums themselves.
    constexpr double kRoundingPad = 1e-13;
    HashrateInterval interval;
    interval.lower = std::max(0.0, z_sum / (l_sum + tail_l) - kRoundingPad);
    interval.upper = std::min(1.0, (z_sum + tail_l) / l_sum + kRoundingPad);
    return interval;
}

} // namespace powmath
