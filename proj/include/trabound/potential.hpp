#pragma once

#include <optional>
#include <vector>

#include "trabound/types.hpp"

namespace trabound {

/// Parameters of the short-range potential
///   (2/lambda^2) V(r) = A [coth(lambda r) - 1] - B / sinh^2(lambda r)
///                       + C cosh(lambda r) / sinh^3(lambda r).
/// A, B, C are dimensionless; lambda is an inverse length.
struct PotentialParams {
    Real A = 0;
    Real B = 0;
    Real C = 0;
    Real lambda = 1;

    /// B/C. Throws DomainError when C == 0.
    Real gamma() const;
    /// A/C. Throws DomainError when C == 0.
    Real xi() const;
};

struct ShapePoint {
    Real x;      // coth(lambda r), >= 1
    Real r;
    Real value;  // U(x) = 2 V / lambda^2; zero for crossings
};

struct ShapeReport {
    std::vector<ShapePoint> crossings;
    std::vector<ShapePoint> extrema;
    bool admits_bound_states = false;  // A <= -1/2
    bool satisfies_B_ge_C = false;
};

/// Roots at or below this distance above x = 1 sit at r = infinity and are dropped.
inline constexpr Real kRootAdmissibility = 1e-12L;

/// V(r) in the units of the parameters (lambda^2 carried through).
/// Throws DomainError for r <= 0.
Real potential_value(const PotentialParams& p, Real r);

/// U(x) = A(x-1) + (1-x^2)(B - Cx), the dimensionless potential 2V/lambda^2 at x = coth(lambda r).
Real potential_u(const PotentialParams& p, Real x);

/// dU/dx = 3Cx^2 - 2Bx + A - C.
Real potential_u_derivative(const PotentialParams& p, Real x);

Real x_of_r(Real lambda, Real r);
/// Inverse of x_of_r; x must exceed 1 (x = 1 is r = infinity).
Real r_of_x(Real lambda, Real x);

/// Zero crossings and extrema with x > 1 (finite r), plus the admissibility flags.
/// Throws DomainError when C == 0.
///
/// Note: for gamma = B/C = 7, xi = A/C = 17 the crossing discriminant
/// (gamma+1)^2 - 4 xi is negative, so no crossing is reported even though
/// both extrema (x = 2 and x = 8/3) exist.
ShapeReport classify_shape(const PotentialParams& p);

/// Largest n with sqrt(-A/2) - 1/2 >= n, i.e. the highest square-integrable
/// polynomial degree in the energy-dependent basis. None when A > -1/2.
std::optional<unsigned> max_basis_index(Real A);

}  // namespace trabound
