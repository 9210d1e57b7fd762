// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powmath/nakamoto.hpp>

#include <powmath/doublespend.hpp>
#include <powmath/specfun.hpp>
#include <powmath/strategies.hpp>

#include <cmath>
#include <cstdint>
#include <limits>

namespace powmath {

namespace {

struct ClosedFormTerms {
    double p_succ = 0.0;
    // E[R]/b at v = 0 and E[T]/tau0; revenue is affine in v with slope p_succ.
    double r0_frac = 0.0;
    double t_frac = 0.0;
};

ClosedFormTerms closed_form_terms(const DoubleSpendPlan& plan)
{
    plan.validate();
    plan.params.require_minority();

    const double p = plan.params.p();
    const double q = plan.params.q;
    const double lambda = plan.params.lambda();
    const double z = static_cast<double>(plan.z);
    const bool capped = plan.A != DoubleSpendPlan::kUncapped;
    const double A = static_cast<double>(plan.A);
    const double lamA = capped ? std::pow(lambda, A) : 0.0;
    const double bracket =
        capped ? detail::geometric_bracket(lambda, plan.A) : 1.0 / (1.0 - lambda);

    ClosedFormTerms out;

    const double catch_up = double_spend_probability(plan.z, plan.params);
    out.p_succ = (catch_up - lamA) / (1.0 - lamA);
    if (out.p_succ < 0.0) out.p_succ = 0.0;
    if (out.p_succ > 1.0) out.p_succ = 1.0;

    // Shared special-function pieces: the race tail from the other side and
    // the central binomial weight p^{z-1} q^z / B(z,z).
    const double race_tail = reg_inc_beta((p - q) * (p - q), 0.5, z);
    const double ln_beta_zz = 2.0 * log_gamma(z) - log_gamma(2.0 * z);
    const double central = std::exp((z - 1.0) * std::log(p) + z * std::log(q) - ln_beta_zz);
    const double om = 1.0 - lambda;

    out.r0_frac = q * z / (2.0 * p) * catch_up
                  - (capped ? A * lamA / (p * om * om * om * bracket * bracket) : 0.0) * race_tail
                  + (2.0 - lambda + lamA * lambda) / (om * om * bracket) * central
                  + out.p_succ;

    if (capped) {
        out.t_frac = z / (2.0 * p) * catch_up
                     + A / (p * om * om * bracket) * race_tail
                     - central / (p * om)
                     + 1.0 / q;
    } else {
        // Without an abandon threshold the losing branch trails forever.
        out.t_frac = std::numeric_limits<double>::infinity();
    }
    return out;
}

} // namespace

double a_nakamoto_success_probability(const DoubleSpendPlan& plan)
{
    return closed_form_terms(plan).p_succ;
}

double a_nakamoto_expected_revenue(const DoubleSpendPlan& plan)
{
    const ClosedFormTerms terms = closed_form_terms(plan);
    return plan.params.b * terms.r0_frac + terms.p_succ * plan.v;
}

double a_nakamoto_expected_duration(const DoubleSpendPlan& plan)
{
    return plan.params.tau0 * closed_form_terms(plan).t_frac;
}

double a_nakamoto_revenue_ratio(const DoubleSpendPlan& plan)
{
    return a_nakamoto_expected_revenue(plan) / a_nakamoto_expected_duration(plan);
}

double minimal_profitable_double_spend(unsigned z, const NetworkParams& params)
{
    params.require_minority();
    if (z < 1) throw std::domain_error("minimal_profitable_double_spend: z must be >= 1");
    if (z <= 20) {
        // Exact integer weight and a single correctly rounded division keep
        // round cases like b / (2 q) free of spurious ulp noise.
        std::uint64_t choose = 1; // binomial(2z - 1, z - 1)
        for (std::uint64_t i = 1; i < z; ++i) choose = choose * (z + i) / i;
        double qz = 1.0;
        for (unsigned i = 0; i < z; ++i) qz *= params.q;
        return params.b / (2.0 * qz * static_cast<double>(choose));
    }
    const double dz = static_cast<double>(z);
    const double ln_choose = log_gamma(2.0 * dz) - log_gamma(dz + 1.0) - log_gamma(dz);
    return params.b * std::exp(-dz * std::log(params.q) - ln_choose) / 2.0;
}

double break_even_double_spend(unsigned z, unsigned A, const NetworkParams& params)
{
    const DoubleSpendPlan plan{z, A, 0.0, params};
    const ClosedFormTerms terms = closed_form_terms(plan);
    // Break even where attack coins per second match honest mining:
    // q E[T]/tau0 = E[R(v)]/b, affine in v with slope p_succ.
    return params.b * (params.q * terms.t_frac - terms.r0_frac) / terms.p_succ;
}

} // namespace powmath
