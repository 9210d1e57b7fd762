// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powmath/strategies.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace powmath {

std::string strategy_kind_name(StrategyKind kind)
{
    switch (kind) {
    case StrategyKind::Honest: return "honest";
    case StrategyKind::SelfishMining: return "selfish";
    case StrategyKind::LeadStubborn: return "lead_stubborn";
    case StrategyKind::EqualForkStubborn: return "equal_fork_stubborn";
    case StrategyKind::ATrailing: return "trailing";
    }
    throw std::invalid_argument("strategy_kind_name: unknown kind");
}

double honest_revenue_ratio(const NetworkParams& params)
{
    params.validate();
    return params.q * params.b / params.tau0;
}

double selfish_apparent_hashrate(const NetworkParams& params)
{
    params.require_minority();
    const double p = params.p();
    const double q = params.q;
    const double gamma = params.gamma;
    const double pq = p * q;
    return (((1.0 + pq) * (p - q) + pq) * q - (1.0 - gamma) * p * p * q * (p - q))
           / (p * p * q + p - q);
}

double stubborn_f(const NetworkParams& params)
{
    params.require_minority();
    const double p = params.p();
    const double q = params.q;
    const double delta = 1.0 - params.gamma;
    // Rationalized form of (1-gamma)/gamma * (1 - (1-sqrt(1-4(1-gamma)pq))/(2q));
    // no cancellation, and the gamma -> 0, 1 limits come out exactly.
    const double w = std::sqrt(1.0 - 4.0 * delta * p * q);
    return 2.0 * delta * p / (w + p - q);
}

namespace detail {

double geometric_bracket(double lambda, unsigned n)
{
    if (!(lambda > 0.0)) throw std::domain_error("geometric_bracket: lambda must be positive");
    if (n == 0) return 0.0;
    const double dn = static_cast<double>(n);
    if (std::fabs(1.0 - lambda) < 1e-6) {
        // (1 - lambda^n)/(1 - lambda) cancels to noise near lambda = 1; the
        // expm1 route is exact through the limit, where the sum equals n.
        if (lambda == 1.0) return dn;
        return std::expm1(dn * std::log1p(lambda - 1.0)) / (lambda - 1.0);
    }
    return (1.0 - std::pow(lambda, dn)) / (1.0 - lambda);
}

double equal_fork_f(const NetworkParams& params)
{
    params.require_minority();
    const double p = params.p();
    const double q = params.q;
    const double delta = 1.0 - params.gamma;
    const double w = std::sqrt(1.0 - 4.0 * delta * p * q);
    return stubborn_f(params) - (1.0 - w) / (2.0 * q);
}

double trailing_ratio(const NetworkParams& params, unsigned A)
{
    params.require_minority();
    if (A < 1) throw std::domain_error("trailing_ratio: A must be >= 1");
    if (A > 1000000) throw std::length_error("trailing_ratio: A exceeds evaluation budget");

    const double p = params.p();
    const double q = params.q;
    const double gamma = params.gamma;
    const double delta = 1.0 - gamma;
    const double lambda = params.lambda();
    const double lamA = std::pow(lambda, static_cast<double>(A));

    // Trail walk on the deficit h - a, absorbing at 0 (recover) and A (quit).
    const double u = (lambda - lamA) / (1.0 - lamA);

    // Conditional honest-block counts inside one trail excursion from lag 1:
    // F(g) = E[#H * 1_quit from g], R(g) = E[#H * 1_recover from g], both zero
    // at the absorbing ends, satisfying -q v(g-1) + v(g) - p v(g+1) = rhs(g).
    double eta_r = 0.0;
    double eta_d = 0.0;
    const unsigned n = A - 1;
    if (n > 0) {
        std::vector<double> diag(n + 1, 1.0), rhs_f(n + 1, 0.0), rhs_r(n + 1, 0.0);
        for (unsigned k = 1; k <= n; ++k) {
            const double recover_next =
                (std::pow(lambda, static_cast<double>(k + 1)) - lamA) / (1.0 - lamA);
            rhs_f[k] = p * (1.0 - recover_next);
            rhs_r[k] = p * recover_next;
        }
        // Thomas elimination with constant off-diagonals -q (sub), -p (super).
        std::vector<double> super(n + 1, -p);
        for (unsigned k = 2; k <= n; ++k) {
            const double w = -q / diag[k - 1];
            diag[k] -= w * super[k - 1];
            rhs_f[k] -= w * rhs_f[k - 1];
            rhs_r[k] -= w * rhs_r[k - 1];
        }
        std::vector<double> sol_f(n + 2, 0.0), sol_r(n + 2, 0.0);
        sol_f[n] = rhs_f[n] / diag[n];
        sol_r[n] = rhs_r[n] / diag[n];
        for (unsigned k = n - 1; k >= 1; --k) {
            sol_f[k] = (rhs_f[k] - super[k] * sol_f[k + 1]) / diag[k];
            sol_r[k] = (rhs_r[k] - super[k] * sol_r[k + 1]) / diag[k];
        }
        eta_r = u > 0.0 ? sol_r[1] / u : 0.0;
        eta_d = sol_f[1] / (1.0 - u);
    }

    // Pre-equality excursion: official-chain blocks e0 and allied blocks nu0
    // accumulated before the fork first ties, conditional on a rogue start.
    const double e0 = p / (p - q);
    const double nu0 = gamma == 0.0 ? 0.0 : q / (p - q) - equal_fork_f(params);

    // Each equality round ends in a win (rogue block), a recovery (trail
    // returns to a tie), or a quit; geometric sums over the round count.
    const double s = 1.0 + eta_r;
    const double c = p * u;
    const double d = p * (1.0 - u);
    const double S0 = 1.0 / (1.0 - c);
    const double Sk1 = c / ((1.0 - c) * (1.0 - c));
    const double Sd = delta / (1.0 - c * delta);
    const double Sk1d = c * delta * delta / ((1.0 - c * delta) * (1.0 - c * delta));
    const double Skd1 = 1.0 / ((1.0 - c * delta) * (1.0 - c * delta));

    const double ez_win = q * ((e0 + 1.0) * S0 + s * Sk1);
    double ez_quit = 0.0;
    if (gamma > 0.0) {
        const double sigma = (Sk1 - Sk1d) / gamma
                             - (delta / (gamma * gamma)) * (S0 - Skd1 + Sk1d);
        ez_quit = d * (e0 * (S0 - Sd) + gamma * s * sigma + nu0 * Sd);
    }
    const double el_win = ez_win;
    const double el_quit = d * ((e0 + 1.0 + eta_d) * S0 + s * Sk1);

    const double ez = q * (ez_win + ez_quit);
    const double el = p + q * (el_win + el_quit);
    return ez / (q * el);
}

} // namespace detail

ProfitabilityResult strategy_revenue_ratio(const StrategySpec& spec, const NetworkParams& params)
{
    spec.validate();
    params.validate();

    double ratio = 1.0;
    switch (spec.kind) {
    case StrategyKind::Honest:
        ratio = 1.0;
        break;
    case StrategyKind::SelfishMining:
        ratio = selfish_apparent_hashrate(params) / params.q;
        break;
    case StrategyKind::LeadStubborn: {
        params.require_minority();
        const double p = params.p();
        const double q = params.q;
        const double base = p + p * q - q;
        ratio = (p + p * q - q * q) / base - p * (p - q) * stubborn_f(params) / base;
        break;
    }
    case StrategyKind::EqualForkStubborn: {
        params.require_minority();
        const double p = params.p();
        const double q = params.q;
        ratio = 1.0 / p - ((p - q) / (p * q)) * detail::equal_fork_f(params);
        break;
    }
    case StrategyKind::ATrailing:
        ratio = detail::trailing_ratio(params, *spec.A);
        break;
    }

    ProfitabilityResult out;
    out.revenue_ratio_over_honest = ratio;
    // Post-adjustment the official chain runs at the target rate again, so
    // the ratio and the official-chain share determine one another.
    out.apparent_hashrate = params.q * ratio;
    out.is_profitable = ratio > 1.0;
    return out;
}

std::vector<DominanceCell> dominance_grid(const std::vector<double>& q_grid,
                                          const std::vector<double>& gamma_grid,
                                          const std::vector<unsigned>& A_values)
{
    std::vector<StrategySpec> candidates;
    candidates.push_back({StrategyKind::Honest, std::nullopt});
    candidates.push_back({StrategyKind::SelfishMining, std::nullopt});
    candidates.push_back({StrategyKind::LeadStubborn, std::nullopt});
    candidates.push_back({StrategyKind::EqualForkStubborn, std::nullopt});
    for (unsigned A : A_values) candidates.push_back({StrategyKind::ATrailing, A});
    for (const auto& spec : candidates) spec.validate();

    std::vector<DominanceCell> grid;
    grid.reserve(q_grid.size() * gamma_grid.size());
    for (double q : q_grid) {
        for (double gamma : gamma_grid) {
            NetworkParams params;
            params.q = q;
            params.gamma = gamma;
            params.require_minority();

            DominanceCell cell;
            cell.q = q;
            cell.gamma = gamma;
            cell.winner = candidates.front();
            cell.winner_ratio = 1.0;
            for (const auto& spec : candidates) {
                const double ratio =
                    strategy_revenue_ratio(spec, params).revenue_ratio_over_honest;
                if (ratio > cell.winner_ratio) {
                    cell.winner = spec;
                    cell.winner_ratio = ratio;
                }
            }
            grid.push_back(cell);
        }
    }
    return grid;
}

} // namespace powmath
