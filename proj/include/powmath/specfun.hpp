// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWMATH_SPECFUN_HPP
#define POWMATH_SPECFUN_HPP

#include <powmath/tolerance.hpp>

namespace powmath {

// ln Gamma(a) for a > 0. Relative error below 1e-13 on [1e-3, 1e6].
double log_gamma(double a);

// B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b), evaluated in log space.
double beta(double a, double b);

// Regularized incomplete beta I_x(a,b), continued-fraction evaluation with
// the symmetry switch at x > (a+1)/(a+b+2). Exact 0 at x=0 and 1 at x=1.
double reg_inc_beta(double x, double a, double b, const RealTolerance& tol = {});

// Regularized upper incomplete gamma Q(s,x) = Gamma(s,x)/Gamma(s).
// Lower series for x < s+1, upper continued fraction otherwise.
double reg_inc_gamma_upper(double s, double x, const RealTolerance& tol = {});

// ln Q(s,x); usable where Q underflows (x >> s).
double log_reg_inc_gamma_upper(double s, double x, const RealTolerance& tol = {});

} // namespace powmath

#endif // POWMATH_SPECFUN_HPP
