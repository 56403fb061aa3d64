#pragma once

#include <cstddef>
#include <vector>

#include "trabound/special_functions.hpp"
#include "trabound/types.hpp"

namespace trabound {

/// Jacobi basis (x-1)^{mu/2} (x+1)^{nu/2} P_n^{(mu,nu)}(x), n = 0..max_degree.
///
/// The tridiagonal case fixes alpha = mu/2 and beta = -nu/2 for the basis
/// exponents (x-1)^alpha (x+1)^{-beta}.
struct BasisParams {
    Real mu = 0;
    Real nu = 0;
    std::size_t max_degree = 0;

    Real alpha() const { return mu / 2; }
    Real beta() const { return -nu / 2; }
    std::size_t size() const { return max_degree + 1; }
    JacobiPair pair() const { return {mu, nu}; }

    /// Throws DomainError unless mu > -1, mu + nu < -2 max_degree - 1 and no
    /// recursion coefficient has a vanishing denominator.
    void validate() const;

    /// Basis holding `size` functions (degrees 0..size-1). size must be positive.
    static BasisParams with_size(std::size_t size, Real mu, Real nu);
};

/// The nu rule nu = -2N - mu - offset, N being the number of basis functions.
Real default_nu(std::size_t basis_size, Real mu, Real offset = 2);

/// Energy-dependent basis parameters: mu = sqrt(-eps), nu = -sqrt(-eps - 2A).
struct EnergyParams {
    Real epsilon;
    Real mu_k;
    Real nu_k;
};

struct RecursionCoeffs {
    std::vector<Real> F;  // 0..N
    std::vector<Real> D;  // 0..N-1
    std::vector<Real> G;  // 0..N
};

/// cosh(theta) = B/C, z = -sqrt(B^2 - C^2), sigma = -1/4.
struct AssociatedParams {
    Real theta;
    Real z;
    Real sigma;
};

/// f_n modulo an overall constant: the true sequence is values * exp(log_scale).
struct ScaledSequence {
    std::vector<Real> values;
    Real log_scale = 0;
};

/// Rolling-pair magnitude above which the recursion rescales.
inline constexpr Real kRescaleThreshold = 1e150L;
/// |C D_n| below this is a degenerate recursion step.
inline constexpr Real kDegenerateStep = 1e-14L;

/// Throws DomainError for eps >= 0 or eps + 2A >= 0.
EnergyParams energy_params(Real epsilon, Real A);

/// F_n = (nu^2 - mu^2)/[(2n+mu+nu)(2n+mu+nu+2)],
/// D_n = 2/(2n+mu+nu+2) sqrt[(n+1)(n+mu+1)(n+nu+1)(n+mu+nu+1)/((2n+mu+nu+1)(2n+mu+nu+3))],
/// G_n = (2n+mu+nu)(2n+mu+nu+2)/4.
RecursionCoeffs recursion_coeffs(const BasisParams& basis);

/// The two algebraic forms of G_n: product and (n + (mu+nu+1)/2)^2 - 1/4.
Real g_product_form(Real mu, Real nu, std::size_t n);
Real g_square_form(Real mu, Real nu, std::size_t n);

/// Requires B >= C > 0.
AssociatedParams associated_params(Real B, Real C);

/// H_0..H_{n_max} from H_0 = 1, H_1 = (B + G_0 - C F_0)/(C D_0) and
///   H_{n+1} = [(B + G_n - C F_n) H_n - C D_{n-1} H_{n-1}] / (C D_n).
/// basis.max_degree must be at least n_max.
ScaledSequence h_polynomial_sequence(const AssociatedParams& assoc, const BasisParams& basis,
                                     Real B, Real C, std::size_t n_max);

/// f_n(eps, A, B, C) for n = 0..n_max in the energy-dependent basis.
ScaledSequence expansion_coefficients(const EnergyParams& energy, Real A, Real B, Real C,
                                      std::size_t n_max);

/// Residual of the symmetric recursion
///   (B/C) f_n - {-G_n/C + F_n} f_n - D_{n-1} f_{n-1} - D_n f_{n+1}
/// for n = 0..f.size()-2.
std::vector<Real> recursion_residual(const RecursionCoeffs& rc, Real B, Real C,
                                     const std::vector<Real>& f);

}  // namespace trabound
