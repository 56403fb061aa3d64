#pragma once

#include <cstddef>

#include "trabound/types.hpp"

namespace trabound {

/// Jacobi polynomial parameters (mu, nu) of P_n^{(mu,nu)}.
///
/// On x >= 1 the weight (x-1)^mu (x+1)^nu is integrable against P_n P_m for
/// n, m <= N only when mu > -1 and mu + nu < -2N - 1. The second condition
/// depends on N and is checked where N is known.
struct JacobiPair {
    Real mu;
    Real nu;
};

/// ln|v| together with the sign of v. sign == 0 iff v == 0.
struct SignedLogMagnitude {
    Real log_abs = 0;
    int sign = 0;

    Real value() const;
};

/// Pole tolerance for signed_log_gamma.
inline constexpr Real kGammaPoleTolerance = 1e-12L;
/// |2n + mu + nu| below this is treated as a degenerate recursion step.
inline constexpr Real kDegenerateDenominator = 1e-10L;

/// P_n^{(mu,nu)}(x) by upward three-term recursion from P_0 = 1 and
/// P_1 = (mu+nu+2)x/2 + (mu-nu)/2.
///
/// Throws DomainError for non-finite x and for a recursion step whose
/// denominator (2k+mu+nu or k+mu+nu+1) vanishes.
Real jacobi_eval(const JacobiPair& pair, std::size_t n, Real x);

/// P_0..P_n at x in a single sweep.
Vector jacobi_sequence(const JacobiPair& pair, std::size_t n, Real x);

/// dP_n/dx from the differential relation
///   (1-x^2) P_n' = -n (x + (nu-mu)/(2n+mu+nu)) P_n + 2(n+mu)(n+nu)/(2n+mu+nu) P_{n-1}.
/// Returns 0 for n == 0. Throws DomainError at x == 1 (the relation is
/// divided by 1 - x^2) and for a degenerate 2n+mu+nu.
Real jacobi_derivative(const JacobiPair& pair, std::size_t n, Real x);

/// ln|Gamma(z)| and sign(Gamma(z)); negative arguments go through the
/// reflection formula. Throws DomainError at the poles z = 0, -1, -2, ...
SignedLogMagnitude signed_log_gamma(Real z);

/// Normalization c_n of the basis polynomial: c_n^2 times
///   int_1^inf (x-1)^mu (x+1)^nu [P_n^{(mu,nu)}(x)]^2 dx
/// equals one. Evaluated in log space from the gamma-function form
///   h_n = (-1)^{n+1} 2^{mu+nu+1}/(2n+mu+nu+1)
///         * Gamma(n+mu+1) Gamma(n+nu+1) Gamma(-n-mu-nu) / (Gamma(n+1) Gamma(-nu) Gamma(nu+1)),
/// where Gamma(n+nu+1)/Gamma(nu+1) is taken as the rising factorial (nu+1)_n so
/// that integer nu is handled without poles. Every remaining gamma argument is
/// positive under mu > -1, mu + nu < -2n - 1.
///
/// Throws DomainError when the pair violates the constraint for this n, or
/// when the assembled norm is not positive and finite.
Real normalization_c(const JacobiPair& pair, std::size_t n);

/// The same normalization from the sine-ratio form
///   h_n = 2^{mu+nu+1}/(2n+mu+nu+1) Gamma(n+mu+1)Gamma(n+nu+1)/(Gamma(n+1)Gamma(n+mu+nu+1))
///         * sin(pi nu)/sin(pi(mu+nu+1)).
/// Undefined (DomainError) when nu or mu+nu is an integer; used to cross-check
/// normalization_c.
Real normalization_c_sine_form(const JacobiPair& pair, std::size_t n);

/// Squared norm h_n = 1/c_n^2 of P_n in the weight (x-1)^mu (x+1)^nu on [1, inf).
Real jacobi_norm_squared(const JacobiPair& pair, std::size_t n);

}  // namespace trabound
