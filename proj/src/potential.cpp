#include "trabound/potential.hpp"

#include <algorithm>
#include <cmath>

namespace trabound {
namespace {

constexpr Real kAsymptoticThreshold = 20;

void require_c(const PotentialParams& p) {
    if (p.C == 0) throw DomainError("the shape analysis requires C != 0");
}

}  // namespace

Real PotentialParams::gamma() const {
    require_c(*this);
    return B / C;
}

Real PotentialParams::xi() const {
    require_c(*this);
    return A / C;
}

Real potential_value(const PotentialParams& p, Real r) {
    if (!(r > 0)) throw DomainError("potential_value: r must be positive");
    if (!(p.lambda > 0)) throw DomainError("potential_value: lambda must be positive");
    const Real y = p.lambda * r;
    Real coth_minus_one, inv_sinh2, cosh_over_sinh3;
    if (y > kAsymptoticThreshold) {
        const Real q = std::exp(-2 * y);
        const Real d = 1 - q;
        coth_minus_one = 2 * q / d;
        inv_sinh2 = 4 * q / (d * d);
        cosh_over_sinh3 = (1 + q) / d * inv_sinh2;
    } else {
        const Real sh = std::sinh(y);
        coth_minus_one = 2 / std::expm1(2 * y);
        inv_sinh2 = 1 / (sh * sh);
        cosh_over_sinh3 = std::cosh(y) / (sh * sh * sh);
    }
    const Real u = p.A * coth_minus_one - p.B * inv_sinh2 + p.C * cosh_over_sinh3;
    return p.lambda * p.lambda / 2 * u;
}

Real potential_u(const PotentialParams& p, Real x) {
    return p.A * (x - 1) + (1 - x * x) * (p.B - p.C * x);
}

Real potential_u_derivative(const PotentialParams& p, Real x) {
    return 3 * p.C * x * x - 2 * p.B * x + p.A - p.C;
}

Real x_of_r(Real lambda, Real r) {
    if (!(lambda > 0)) throw DomainError("x_of_r: lambda must be positive");
    if (!(r > 0)) throw DomainError("x_of_r: r must be positive");
    // coth(y) = 1 + 2/(e^{2y} - 1)
    return 1 + 2 / std::expm1(2 * lambda * r);
}

Real r_of_x(Real lambda, Real x) {
    if (!(lambda > 0)) throw DomainError("r_of_x: lambda must be positive");
    if (!(x > 1)) throw DomainError("r_of_x: x must exceed 1 (x = 1 is r = infinity)");
    return std::log1p(2 / (x - 1)) / (2 * lambda);
}

ShapeReport classify_shape(const PotentialParams& p) {
    require_c(p);
    const Real g = p.gamma();
    const Real xi = p.xi();
    ShapeReport out;
    out.admits_bound_states = p.A <= Real(-0.5);
    out.satisfies_B_ge_C = p.B >= p.C;

    auto keep = [&](Real x, std::vector<ShapePoint>& into, bool crossing) {
        if (!(x >= 1 + kRootAdmissibility)) return;
        into.push_back({x, r_of_x(p.lambda, x), crossing ? Real(0) : potential_u(p, x)});
    };

    const Real disc_cross = (g + 1) * (g + 1) - 4 * xi;
    if (disc_cross > 0) {
        const Real s = std::sqrt(disc_cross);
        keep((g - 1 - s) / 2, out.crossings, true);
        keep((g - 1 + s) / 2, out.crossings, true);
    } else if (disc_cross == 0) {
        keep((g - 1) / 2, out.crossings, true);
    }

    const Real disc_ext = g * g + 3 * (1 - xi);
    if (disc_ext > 0) {
        const Real s = std::sqrt(disc_ext);
        keep((g - s) / 3, out.extrema, false);
        keep((g + s) / 3, out.extrema, false);
    } else if (disc_ext == 0) {
        keep(g / 3, out.extrema, false);
    }
    return out;
}

std::optional<unsigned> max_basis_index(Real A) {
    if (!(A <= Real(-0.5))) return std::nullopt;
    const Real n = std::floor(std::sqrt(-A / 2) - Real(0.5));
    return static_cast<unsigned>(std::max<Real>(n, 0));
}

}  // namespace trabound
