// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWMATH_TOLERANCE_HPP
#define POWMATH_TOLERANCE_HPP

#include <stdexcept>

namespace powmath {

// Convergence policy for iterative kernels. Iteration caps may be raised
// internally by routines whose parameter range is known to need it; running
// past the cap is always an error, never a silent partial result.
struct RealTolerance {
    double abs_tol = 1e-13;
    double rel_tol = 1e-13;
    int max_iterations = 500;

    void validate() const
    {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_iterations < 1)
            throw std::domain_error("RealTolerance: tolerances must be positive and max_iterations >= 1");
    }
};

} // namespace powmath

#endif // POWMATH_TOLERANCE_HPP
