#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "trabound/potential.hpp"
#include "trabound/tra_core.hpp"
#include "trabound/types.hpp"

namespace trabound {

/// Ingredients of the finite series for bound state k.
struct StateCoefficients {
    EnergyParams energy;
    ScaledSequence f;      // f_n, n = 0..terms-1
    std::vector<Real> c;   // basis normalization c_n at (mu_k, nu_k)
    std::size_t terms = 0;
};

struct WavefunctionTable {
    std::size_t state_index = 0;
    std::vector<Real> r_grid;
    std::vector<Real> psi;  // un-normalized
    Real epsilon = 0;
    Real mu_k = 0;
    Real nu_k = 0;
    std::size_t terms_used = 0;
    std::size_t clamped = 0;  // points whose log-magnitude fell below kPsiLogFloor
};

/// Points where ln|psi| drops below this are written as exact zeros.
inline constexpr Real kPsiLogFloor = -700;

/// mu_k, nu_k at epsilon_k, the coefficients f_n and normalizations c_n.
/// The series has k + 1 terms unless `terms` overrides it. Throws DomainError
/// when the energy is invalid, B < C, or mu_k + nu_k >= -2(terms-1) - 1.
StateCoefficients state_coefficients(std::size_t k, Real epsilon_k, Real A, Real B, Real C,
                                     std::optional<std::size_t> terms = std::nullopt);

/// psi_k(r) = (coth lr - 1)^{mu_k/2} (coth lr + 1)^{nu_k/2} sum_n c_n f_n P_n^{(mu_k,nu_k)}(coth lr),
/// with the prefactor combined in log space. r_grid must be strictly ascending and positive.
WavefunctionTable sample_wavefunction(std::size_t k, Real epsilon_k, const PotentialParams& p,
                                      const std::vector<Real>& r_grid,
                                      std::optional<std::size_t> terms = std::nullopt);

/// `samples` log-spaced points from r_min_scaled/lambda to r_max_scaled/lambda.
std::vector<Real> log_r_grid(Real lambda, std::size_t samples = 2000, Real r_min_scaled = 1e-3L,
                             Real r_max_scaled = 15);

/// Sign changes between consecutive nonzero samples.
std::size_t count_sign_changes(const std::vector<Real>& psi);

}  // namespace trabound
