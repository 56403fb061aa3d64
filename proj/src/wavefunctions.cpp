#include "trabound/wavefunctions.hpp"

#include <cmath>
#include <string>

#include "trabound/special_functions.hpp"

namespace trabound {

StateCoefficients state_coefficients(std::size_t k, Real epsilon_k, Real A, Real B, Real C,
                                     std::optional<std::size_t> terms) {
    StateCoefficients out;
    out.terms = terms.value_or(k + 1);
    if (out.terms == 0) throw DomainError("the series needs at least one term");
    out.energy = energy_params(epsilon_k, A);
    const std::size_t top = out.terms - 1;
    const Real bound = -2 * static_cast<Real>(top) - 1;
    if (!(out.energy.mu_k + out.energy.nu_k < bound)) {
        throw DomainError("series with " + std::to_string(out.terms) +
                          " terms is not square integrable at this energy (mu_k + nu_k = " +
                          std::to_string(static_cast<double>(out.energy.mu_k + out.energy.nu_k)) +
                          ")");
    }
    out.f = expansion_coefficients(out.energy, A, B, C, top);
    const JacobiPair pair{out.energy.mu_k, out.energy.nu_k};
    out.c.resize(out.terms);
    for (std::size_t n = 0; n < out.terms; ++n) out.c[n] = normalization_c(pair, n);
    return out;
}

WavefunctionTable sample_wavefunction(std::size_t k, Real epsilon_k, const PotentialParams& p,
                                      const std::vector<Real>& r_grid,
                                      std::optional<std::size_t> terms) {
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] > 0)) throw DomainError("r grid must be positive");
        if (i > 0 && !(r_grid[i] > r_grid[i - 1]))
            throw DomainError("r grid must be strictly ascending");
    }
    const StateCoefficients sc = state_coefficients(k, epsilon_k, p.A, p.B, p.C, terms);
    const Real mu = sc.energy.mu_k, nu = sc.energy.nu_k;
    const JacobiPair pair{mu, nu};
    const std::size_t top = sc.terms - 1;

    WavefunctionTable out;
    out.state_index = k;
    out.r_grid = r_grid;
    out.psi.resize(r_grid.size());
    out.epsilon = epsilon_k;
    out.mu_k = mu;
    out.nu_k = nu;
    out.terms_used = sc.terms;

    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        const Real em1 = std::expm1(2 * p.lambda * r_grid[i]);
        const Real x_minus_1 = 2 / em1;  // coth(lr) - 1
        const Real x = 1 + x_minus_1;
        const Vector P = jacobi_sequence(pair, top, x);
        Real series = 0;
        for (std::size_t n = 0; n <= top; ++n)
            series += sc.c[n] * sc.f.values[n] * P(static_cast<Eigen::Index>(n));
        if (series == 0 || !std::isfinite(series)) {
            if (!std::isfinite(series)) throw NumericalError("wavefunction series overflowed");
            out.psi[i] = 0;
            continue;
        }
        const Real log_prefactor = mu / 2 * std::log(x_minus_1) + nu / 2 * std::log1p(x);
        const Real log_mag = log_prefactor + std::log(std::fabs(series));
        if (log_mag < kPsiLogFloor) {
            out.psi[i] = 0;
            ++out.clamped;
            continue;
        }
        out.psi[i] = std::copysign(std::exp(log_mag), series);
    }
    return out;
}

std::vector<Real> log_r_grid(Real lambda, std::size_t samples, Real r_min_scaled,
                             Real r_max_scaled) {
    if (!(lambda > 0)) throw DomainError("lambda must be positive");
    if (!(r_min_scaled > 0) || !(r_max_scaled > r_min_scaled))
        throw DomainError("need 0 < r_min < r_max");
    if (samples < 2) throw DomainError("grid needs at least two samples");
    std::vector<Real> r(samples);
    const Real a = std::log(r_min_scaled), b = std::log(r_max_scaled);
    for (std::size_t i = 0; i < samples; ++i) {
        const Real t = static_cast<Real>(i) / static_cast<Real>(samples - 1);
        r[i] = std::exp(a + (b - a) * t) / lambda;
    }
    r.back() = r_max_scaled / lambda;
    return r;
}

std::size_t count_sign_changes(const std::vector<Real>& psi) {
    std::size_t changes = 0;
    int prev = 0;
    for (Real v : psi) {
        const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

}  // namespace trabound
