#include "trabound/tra_core.hpp"

#include <cmath>
#include <sstream>

namespace trabound {
namespace {

std::string fmt(Real v) {
    std::ostringstream os;
    os.precision(17);
    os << static_cast<double>(v);
    return os.str();
}

}  // namespace

void BasisParams::validate() const {
    const Real bound = -2 * static_cast<Real>(max_degree) - 1;
    if (!(mu > -1)) throw DomainError("basis requires mu > -1, got mu=" + fmt(mu));
    if (!(mu + nu < bound)) {
        throw DomainError("basis of degree " + std::to_string(max_degree) + " requires mu + nu < " +
                          fmt(bound) + ", got mu + nu = " + fmt(mu + nu));
    }
    // 2n+mu+nu < -1 under the constraint; only 2n+mu+nu+2 can vanish (at n = max_degree).
    for (std::size_t n = 0; n <= max_degree; ++n) {
        const Real s2 = 2 * static_cast<Real>(n) + mu + nu + 2;
        if (std::fabs(s2) < kDegenerateDenominator) {
            throw DomainError("recursion coefficient F_" + std::to_string(n) +
                              " is singular (2n+mu+nu+2 = 0) for mu=" + fmt(mu) + ", nu=" + fmt(nu));
        }
    }
}

BasisParams BasisParams::with_size(std::size_t size, Real mu, Real nu) {
    if (size == 0) throw DomainError("basis size must be positive");
    return BasisParams{mu, nu, size - 1};
}

Real default_nu(std::size_t basis_size, Real mu, Real offset) {
    return -2 * static_cast<Real>(basis_size) - mu - offset;
}

EnergyParams energy_params(Real epsilon, Real A) {
    if (!(epsilon < 0)) throw DomainError("energy_params requires epsilon < 0, got " + fmt(epsilon));
    if (!(epsilon + 2 * A < 0)) {
        throw DomainError("energy_params requires epsilon + 2A < 0, got " + fmt(epsilon + 2 * A));
    }
    return {epsilon, std::sqrt(-epsilon), -std::sqrt(-epsilon - 2 * A)};
}

Real g_product_form(Real mu, Real nu, std::size_t n) {
    const Real s = 2 * static_cast<Real>(n) + mu + nu;
    return s * (s + 2) / 4;
}

Real g_square_form(Real mu, Real nu, std::size_t n) {
    const Real h = static_cast<Real>(n) + (mu + nu + 1) / 2;
    return h * h - Real(0.25);
}

RecursionCoeffs recursion_coeffs(const BasisParams& basis) {
    basis.validate();
    const Real mu = basis.mu, nu = basis.nu;
    const std::size_t N = basis.max_degree;
    RecursionCoeffs rc;
    rc.F.resize(N + 1);
    rc.G.resize(N + 1);
    rc.D.resize(N);
    for (std::size_t n = 0; n <= N; ++n) {
        const Real nn = static_cast<Real>(n);
        const Real s = 2 * nn + mu + nu;
        rc.F[n] = (nu * nu - mu * mu) / (s * (s + 2));
        rc.G[n] = s * (s + 2) / 4;
        if (n == N) break;
        const Real radicand = (nn + 1) * (nn + mu + 1) * (nn + nu + 1) * (nn + mu + nu + 1) /
                              ((s + 1) * (s + 3));
        if (!(radicand > 0)) {
            throw DomainError("recursion coefficient D_" + std::to_string(n) +
                              " has a non-positive radicand " + fmt(radicand));
        }
        rc.D[n] = 2 / (s + 2) * std::sqrt(radicand);
    }
    return rc;
}

AssociatedParams associated_params(Real B, Real C) {
    if (!(C > 0) || !(B >= C)) {
        throw DomainError("the polynomial association cosh(theta) = B/C needs B >= C > 0, got B=" +
                          fmt(B) + ", C=" + fmt(C));
    }
    return {std::acosh(B / C), -std::sqrt(B * B - C * C), Real(-0.25)};
}

ScaledSequence h_polynomial_sequence(const AssociatedParams& assoc, const BasisParams& basis,
                                     Real B, Real C, std::size_t n_max) {
    if (C == 0) throw DomainError("h_polynomial_sequence requires C != 0");
    if (basis.max_degree < n_max) {
        throw DomainError("basis degree " + std::to_string(basis.max_degree) +
                          " is below the requested n_max " + std::to_string(n_max));
    }
    const RecursionCoeffs rc = recursion_coeffs(basis);
    const Real shift = (basis.mu + basis.nu + 1) / 2;
    auto g = [&](std::size_t n) {
        const Real h = static_cast<Real>(n) + shift;
        return h * h + assoc.sigma;
    };

    ScaledSequence out;
    out.values.resize(n_max + 1);
    out.values[0] = 1;
    for (std::size_t n = 0; n < n_max; ++n) {
        const Real step = C * rc.D[n];
        if (std::fabs(step) < kDegenerateStep) {
            throw NumericalError("degenerate recursion step: |C D_" + std::to_string(n) + "| = " +
                                 fmt(std::fabs(step)));
        }
        Real next = (B + g(n) - C * rc.F[n]) * out.values[n];
        if (n > 0) next -= C * rc.D[n - 1] * out.values[n - 1];
        next /= step;
        out.values[n + 1] = next;
        if (std::fabs(next) > kRescaleThreshold) {
            const Real scale = std::fabs(next);
            for (std::size_t i = 0; i <= n + 1; ++i) out.values[i] /= scale;
            out.log_scale += std::log(scale);
        }
    }
    return out;
}

ScaledSequence expansion_coefficients(const EnergyParams& energy, Real A, Real B, Real C,
                                      std::size_t n_max) {
    const AssociatedParams assoc = associated_params(B, C);
    const EnergyParams checked = energy_params(energy.epsilon, A);
    const BasisParams basis{checked.mu_k, checked.nu_k, n_max};
    return h_polynomial_sequence(assoc, basis, B, C, n_max);
}

std::vector<Real> recursion_residual(const RecursionCoeffs& rc, Real B, Real C,
                                     const std::vector<Real>& f) {
    std::vector<Real> out;
    if (f.size() < 2) return out;
    out.resize(f.size() - 1);
    for (std::size_t n = 0; n + 1 < f.size(); ++n) {
        Real r = (B / C) * f[n] - (-rc.G[n] / C + rc.F[n]) * f[n] - rc.D[n] * f[n + 1];
        if (n > 0) r -= rc.D[n - 1] * f[n - 1];
        out[n] = r;
    }
    return out;
}

}  // namespace trabound
