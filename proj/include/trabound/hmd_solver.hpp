#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "trabound/potential.hpp"
#include "trabound/tra_core.hpp"
#include "trabound/types.hpp"

namespace trabound {

struct SymTridiagonal {
    Vector diag;
    Vector off;  // size diag.size() - 1

    Eigen::Index size() const { return diag.size(); }
    Matrix dense() const;
};

/// Gauss nodes tau (ascending) and the orthogonal matrix Lambda whose column j
/// is the normalized eigenvector for tau_j.
struct QuadratureRule {
    Vector tau;
    Matrix Lambda;
};

/// Hamiltonian in units of lambda^2/2 and the overlap matrix of the basis.
struct AssembledSystem {
    Matrix H;
    Matrix omega;
};

struct GeneralizedEigen {
    Vector values;   // ascending
    Matrix vectors;  // column j pairs with values(j), omega-normalized
    Real max_residual = 0;  // max_j |H f_j - e_j omega f_j| / (|H| |f_j|)
};

/// Bound part of a computed spectrum. epsilons are 2E/lambda^2, ascending.
struct BoundSpectrum {
    std::vector<Real> epsilons;
    std::size_t basis_size = 0;
    Real mu_used = 0;
    Real nu_used = 0;
    std::size_t discarded_nonnegative = 0;
    Real max_residual = 0;

    /// -epsilon, descending (energies in units of -lambda^2/2).
    std::vector<Real> report_units() const;
    std::size_t count() const { return epsilons.size(); }
};

/// Eigenvalues above this are not counted as bound.
inline constexpr Real kBoundThreshold = -1e-10L;
/// Sweeps allowed per eigenvalue in the tridiagonal solver.
inline constexpr int kMaxQlSweeps = 50;
/// |1 +- tau| below this is a pole of the quadrature kernels.
inline constexpr Real kNodePoleTolerance = 1e-12L;

/// X_{n,m} = F_n delta_{n,m} + D_n delta_{n,m-1} + D_{n-1} delta_{n,m+1}.
SymTridiagonal build_x_matrix(const BasisParams& basis);

/// Full eigendecomposition by implicit QL with Wilkinson shifts. Eigenvalues
/// ascending. Throws NumericalError naming the eigenvalue index that did not
/// converge within kMaxQlSweeps.
QuadratureRule symtridiag_eig(const SymTridiagonal& X);

/// Lambda diag(w(tau)) Lambda^T. Throws NumericalError if w(tau_j) is not finite.
Matrix quadrature_matrix(const QuadratureRule& rule, const std::function<Real(Real)>& w);

/// H and omega from the Gauss-quadrature representation:
///   H = [1/4 - B - (n + (mu+nu+1)/2)^2] delta + C X
///       + (mu^2/2) Lambda Omega_- Lambda^T + ((nu^2 + A)/2) Lambda Omega_+ Lambda^T,
///   omega = -Lambda diag(1/(1 - tau^2)) Lambda^T,
/// with (Omega_+-)_{jj} = 1/(1 +- tau_j).
AssembledSystem assemble_system(const BasisParams& basis, const PotentialParams& p);
AssembledSystem assemble_system(const BasisParams& basis, const PotentialParams& p,
                                const SymTridiagonal& X, const QuadratureRule& rule);

/// All generalized eigenpairs of H f = e omega f by Cholesky reduction.
/// Throws NumericalError if omega is not positive definite.
GeneralizedEigen generalized_spectrum(const AssembledSystem& sys);

/// Keeps eigenvalues below kBoundThreshold.
BoundSpectrum bound_states(const Vector& eigenvalues);

struct SolverOptions {
    std::size_t basis_size = 100;
    Real mu = 1.5L;
    std::optional<Real> nu;  // default: -2 basis_size - mu - 2
    /// Ties nu to mu through nu = -sqrt(mu^2 - 2A). Off by default: the
    /// constraint mu + nu < -2N - 1 then caps the basis size.
    bool eliminate_nu = false;
};

/// Resolves (mu, nu) for the options and validates the resulting basis.
BasisParams resolve_basis(const PotentialParams& p, const SolverOptions& opts);

/// Assemble, solve and filter in one call.
BoundSpectrum solve_spectrum(const PotentialParams& p, const SolverOptions& opts);
BoundSpectrum solve_spectrum(const PotentialParams& p, const BasisParams& basis);

// ---------------------------------------------------------------------------
// Stability scan over the computational parameter mu.

/// Relative change between neighbouring grid points below which they count as
/// lying on the same plateau.
inline constexpr Real kPlateauThreshold = 1e-6L;

struct StatePlateau {
    std::size_t state = 0;
    std::optional<Real> delta;  // max - min of -epsilon_k over the plateau
    std::optional<Real> mu_begin;
    std::optional<Real> mu_end;
    std::size_t points = 0;  // grid points on the plateau

    bool contains(Real mu) const {
        return mu_begin && mu_end && *mu_begin <= mu && mu <= *mu_end;
    }
};

struct PlateauScan {
    std::vector<Real> mu;
    std::vector<Real> nu;
    std::vector<BoundSpectrum> spectra;
    std::vector<StatePlateau> states;
};

using NuRule = std::function<Real(Real)>;

/// nu = -2 basis_size - mu - 2.
NuRule default_nu_rule(std::size_t basis_size);

/// Bound spectrum at every grid point (evaluated concurrently, returned in grid
/// order) and, per state, the longest run of neighbours whose -epsilon agrees
/// to kPlateauThreshold. Throws DomainError naming the first invalid mu.
PlateauScan plateau_scan(const PotentialParams& p, std::size_t basis_size,
                         const std::vector<Real>& mu_grid, const NuRule& nu_rule);

/// Plateau detection on a single sequence of -epsilon values; missing entries
/// (state absent at that grid point) break runs.
StatePlateau detect_plateau(std::size_t state, const std::vector<Real>& mu,
                            const std::vector<std::optional<Real>>& values);

}  // namespace trabound
