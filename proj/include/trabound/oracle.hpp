#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "trabound/tra_core.hpp"
#include "trabound/types.hpp"

namespace trabound {

// Brute-force matrix elements by adaptive quadrature on the original integral.
// The direct integrals never touch the tridiagonal matrix, its eigenvectors, or
// the coordinate map used by the solver.

struct IntegrationResult {
    Real value = 0;
    Real abs_error_estimate = 0;
    std::size_t evaluations = 0;
};

inline constexpr std::size_t kOracleEvaluationBudget = 10'000'000;

/// int_1^inf f(x) dx through x = 1 + e^t, adaptive Gauss-Kronrod on t in R.
/// Succeeds when the error estimate is below tol * max(1, int |f|); otherwise
/// throws NumericalError.
IntegrationResult integrate_half_line(const std::function<Real(Real)>& f, Real tol);

/// Same, with the integrand given in terms of t = ln(x - 1) directly
/// (the Jacobian e^t is not applied).
IntegrationResult integrate_log_coordinate(const std::function<Real(Real)>& g, Real tol);

/// c_n c_m int_1^inf (x-1)^mu (x+1)^nu w(x) P_n(x) P_m(x) dx.
/// Requires n, m <= basis.max_degree and tol >= 1e-12.
/// w sees x rounded to working precision, which is exactly 1 for x - 1 below
/// machine epsilon; kernels singular at x = 1 should use the Kernel overload.
IntegrationResult direct_matrix_element(const BasisParams& basis,
                                        const std::function<Real(Real)>& w, std::size_t n,
                                        std::size_t m, Real tol);

enum class Kernel { One, X, InvOneMinusX, InvOnePlusX, InvXSquaredMinusOne };

std::string_view kernel_name(Kernel k);
Real kernel_value(Kernel k, Real x);
/// The kernel as a function of e = x - 1.
Real kernel_value_shifted(Kernel k, Real e);

IntegrationResult direct_matrix_element(const BasisParams& basis, Kernel kernel, std::size_t n,
                                        std::size_t m, Real tol);

/// All four kernels the Hamiltonian and overlap assembly depend on.
inline constexpr Kernel kCheckedKernels[] = {Kernel::X, Kernel::InvOneMinusX, Kernel::InvOnePlusX,
                                             Kernel::InvXSquaredMinusOne};

struct QuadratureComparison {
    Kernel kernel;
    Matrix quadrature;
    Matrix direct;
    Real max_abs_discrepancy = 0;
};

/// Gauss-quadrature matrix for `kernel` against the brute-force integrals,
/// entry by entry. Limited to max_degree <= 8.
QuadratureComparison compare_quadrature(const BasisParams& basis, Kernel kernel, Real tol = 1e-11L);

}  // namespace trabound
