// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "powmath/doublespend.hpp"
#include "powmath/params.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace powmath;

namespace {

bool close_abs(double a, double b, double tol)
{
    return std::abs(a - b) <= tol;
}

bool close_rel(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

NetworkParams with_q(double q)
{
    NetworkParams np;
    np.q = q;
    return np;
}

} // namespace

TEST_CASE("nakamoto_catchup_probability is the ruin power")
{
    CHECK(nakamoto_catchup_probability(0, with_q(0.3)) == 1.0);
    CHECK(close_rel(nakamoto_catchup_probability(2, with_q(0.3)), 9.0 / 49.0, 1e-13));
    CHECK(close_rel(nakamoto_catchup_probability(3, with_q(0.1)), 1.0 / 729.0, 1e-13));
    // Critical hashrate: certain catch-up at any distance.
    for (std::uint64_t n : {1ull, 5ull, 50ull})
        CHECK(nakamoto_catchup_probability(n, with_q(0.5)) == 1.0);
    CHECK_THROWS_AS(nakamoto_catchup_probability(1, with_q(0.6)), std::domain_error);
}

TEST_CASE("catchup probability matches the absorbing-walk linear system")
{
    for (double q : {0.1, 0.3}) {
        for (unsigned n : {1u, 2u, 4u}) {
            const double ref = oracles::catchup_linear_solve(n, q, 600);
            CHECK(close_abs(nakamoto_catchup_probability(n, with_q(q)), ref, 1e-9));
        }
    }
}

TEST_CASE("double_spend_probability frozen values")
{
    const NetworkParams np = with_q(0.1);
    const double expected[] = {0.2, 0.056, 0.01712, 0.005456, 0.00178184, 0.00059141216};
    for (unsigned z = 1; z <= 6; ++z)
        CHECK(close_rel(double_spend_probability(z, np), expected[z - 1], 1e-10));
    CHECK(close_rel(double_spend_probability(10, np), 7.859764654256e-6, 1e-10));
    CHECK(close_rel(double_spend_probability(6, with_q(0.3)), 0.15644958192, 1e-10));
    CHECK(close_rel(double_spend_probability(6, with_q(0.45)), 0.7337548383423046875, 1e-10));
    CHECK(close_rel(double_spend_probability(100, np), 2.99806564782e-46, 1e-9));
    CHECK(close_rel(double_spend_probability(400, np), 1.16913752449e-179, 1e-9));
}

TEST_CASE("double_spend_probability equals 2q at one confirmation")
{
    for (double q : {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45})
        CHECK(close_abs(double_spend_probability(1, with_q(q)), 2.0 * q, 1e-12));
}

TEST_CASE("double_spend_probability decreases in z and matches quadrature")
{
    for (double q : {0.1, 0.3, 0.45}) {
        const NetworkParams np = with_q(q);
        double prev = 1.0;
        for (unsigned z = 1; z <= 40; ++z) {
            const double cur = double_spend_probability(z, np);
            CHECK(cur < prev);
            prev = cur;
        }
        const double x = 4.0 * np.p() * np.q;
        for (unsigned z : {1u, 2u, 3u, 5u, 8u, 13u, 21u, 40u}) {
            const double ref = oracles::inc_beta_quadrature(x, static_cast<double>(z), 0.5);
            // The quadrature carries absolute error near its eps; only compare
            // relatively where the value dominates that floor.
            if (ref >= 1e-8)
                CHECK(close_rel(double_spend_probability(z, np), ref, 1e-8));
            else
                CHECK(close_abs(double_spend_probability(z, np), ref, 1e-12));
        }
    }
    CHECK_THROWS_AS(double_spend_probability(0, with_q(0.1)), std::domain_error);
    CHECK_THROWS_AS(double_spend_probability(3, with_q(0.5)), std::domain_error);
}

TEST_CASE("double_spend_probability matches a direct race simulation at z = 3")
{
    // Independent letter-by-letter race: wait for z official blocks, then
    // keep going until the rogue chain catches up to a tie or trails
    // hopelessly. Catching up counts as a win, exactly like the ruin law
    // (q/p)^n that the closed form integrates over.
    const double q = 0.1;
    const unsigned z = 3;
    const int hopeless = 60;
    oracles::TestRng rng(0xdeadbeefULL);
    const int trials = 400000;
    int wins = 0;
    for (int t = 0; t < trials; ++t) {
        long a = 0, h = 0;
        while (h < static_cast<long>(z)) (rng.uniform() < q ? a : h)++;
        for (;;) {
            if (a >= h) {
                ++wins;
                break;
            }
            if (h - a >= hopeless) break;
            (rng.uniform() < q ? a : h)++;
        }
    }
    const double est = static_cast<double>(wins) / trials;
    const double truth = double_spend_probability(z, with_q(q));
    const double sigma = std::sqrt(truth * (1.0 - truth) / trials);
    CHECK(std::abs(est - truth) <= 3.0 * sigma);
}

TEST_CASE("double_spend_asymptotic tracks the exact tail")
{
    const NetworkParams np = with_q(0.1);
    const double e100 = std::abs(double_spend_asymptotic(100, np) /
                                     double_spend_probability(100, np) -
                                 1.0);
    const double e400 = std::abs(double_spend_asymptotic(400, np) /
                                     double_spend_probability(400, np) -
                                 1.0);
    CHECK(e100 <= 0.05);
    CHECK(e400 < e100);

    // Wiring against the stated equivalent.
    const NetworkParams quarter = with_q(0.25);
    const double s = 4.0 * quarter.p() * quarter.q;
    const double ref = std::pow(s, 1.0) / std::sqrt(3.14159265358979323846 * (1.0 - s) * 1.0);
    CHECK(close_rel(double_spend_asymptotic(1, quarter), ref, 1e-12));
    CHECK_THROWS_AS(double_spend_asymptotic(0, np), std::domain_error);
}

TEST_CASE("conditional probability frozen values and edges")
{
    auto value = [](unsigned z, double kappa, double q) {
        ConfirmationQuery query;
        query.z = z;
        query.params.q = q;
        query.kappa = kappa;
        return double_spend_probability_conditional(query);
    };

    CHECK(close_rel(value(6, 1.0, 0.1), 0.00024280274536288616536, 1e-11));
    CHECK(close_rel(value(6, 0.5, 0.1), 0.000026241305653698220487, 1e-11));
    CHECK(close_rel(value(2, 1.0, 0.1), 0.050977892839338618337, 1e-11));
    CHECK(close_rel(value(2, 2.0, 0.1), 0.11342958636845786158, 1e-11));

    // Instant confirmations leave the attacker exactly z behind.
    for (unsigned z : {1u, 2u, 6u}) {
        const NetworkParams np = with_q(0.1);
        CHECK(close_rel(value(z, 0.0, 0.1), std::pow(np.lambda(), z), 1e-12));
    }

    // Longer observed confirmation time favors the attacker.
    double prev = 0.0;
    for (double kappa : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double cur = value(6, kappa, 0.1);
        CHECK(cur >= prev);
        prev = cur;
    }

    // Without an observed time factor the query degrades to the
    // unconditional probability.
    ConfirmationQuery plain;
    plain.z = 4;
    plain.params.q = 0.1;
    CHECK(double_spend_probability_conditional(plain) ==
          double_spend_probability(4, plain.params));

    ConfirmationQuery bad;
    bad.z = 0;
    bad.kappa = 1.0;
    CHECK_THROWS_AS(double_spend_probability_conditional(bad), std::domain_error);
    ConfirmationQuery negk;
    negk.z = 2;
    negk.kappa = -0.5;
    CHECK_THROWS_AS(double_spend_probability_conditional(negk), std::domain_error);
}

TEST_CASE("conditional probability averages back to the unconditional one")
{
    // kappa drawn as Gamma(z,1)/z: the confirmation time over its mean when
    // the official chain runs on schedule. The mixture mean must recover
    // P(z).
    const double q = 0.1;
    const NetworkParams np = with_q(q);
    oracles::TestRng rng(0xfeedULL);
    for (unsigned z : {2u, 6u}) {
        const int draws = 200000;
        double sum = 0.0, sumsq = 0.0;
        ConfirmationQuery query;
        query.z = z;
        query.params = np;
        for (int i = 0; i < draws; ++i) {
            double g = 0.0;
            for (unsigned j = 0; j < z; ++j) g -= std::log1p(-rng.uniform());
            query.kappa = g / static_cast<double>(z);
            const double v = double_spend_probability_conditional(query);
            sum += v;
            sumsq += v * v;
        }
        const double mean = sum / draws;
        const double sd = std::sqrt((sumsq / draws - mean * mean) / draws);
        CHECK(std::abs(mean - double_spend_probability(z, np)) <= 3.0 * sd);
    }
}

TEST_CASE("confirmations_for_risk picks the least sufficient depth")
{
    const NetworkParams np = with_q(0.1);
    CHECK(confirmations_for_risk(0.01, np) == 4);
    CHECK(confirmations_for_risk(0.001, np) == 6);
    CHECK(confirmations_for_risk(0.5, np) == 1);

    // Property: the returned depth is sufficient and minimal.
    oracles::TestRng rng(0xc0ffeeULL);
    for (int i = 0; i < 50; ++i) {
        const double q = rng.uniform(0.02, 0.45);
        const double risk = std::pow(10.0, rng.uniform(-9.0, -0.5));
        const NetworkParams p2 = with_q(q);
        const unsigned z = confirmations_for_risk(risk, p2);
        CHECK(double_spend_probability(z, p2) <= risk);
        if (z > 1) CHECK(double_spend_probability(z - 1, p2) > risk);
    }

    CHECK_THROWS_AS(confirmations_for_risk(0.0, np), std::domain_error);
    CHECK_THROWS_AS(confirmations_for_risk(1.0, np), std::domain_error);
    CHECK_THROWS_AS(confirmations_for_risk(-0.2, np), std::domain_error);
}
