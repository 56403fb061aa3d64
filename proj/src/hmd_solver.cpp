#include "trabound/hmd_solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace trabound {
namespace {

std::string fmt(Real v) {
    std::ostringstream os;
    os.precision(17);
    os << static_cast<double>(v);
    return os.str();
}

// Mirror the lower triangle so the result is exactly symmetric.
void symmetrize(Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = j + 1; i < m.rows(); ++i) m(j, i) = m(i, j);
}

}  // namespace

Matrix SymTridiagonal::dense() const {
    const Eigen::Index n = diag.size();
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diag(i);
    for (Eigen::Index i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = off(i);
    return m;
}

std::vector<Real> BoundSpectrum::report_units() const {
    std::vector<Real> out(epsilons.size());
    std::transform(epsilons.begin(), epsilons.end(), out.begin(), [](Real e) { return -e; });
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

SymTridiagonal build_x_matrix(const BasisParams& basis) {
    const RecursionCoeffs rc = recursion_coeffs(basis);
    SymTridiagonal X;
    X.diag = Eigen::Map<const Vector>(rc.F.data(), static_cast<Eigen::Index>(rc.F.size()));
    X.off = Eigen::Map<const Vector>(rc.D.data(), static_cast<Eigen::Index>(rc.D.size()));
    return X;
}

QuadratureRule symtridiag_eig(const SymTridiagonal& X) {
    const int n = static_cast<int>(X.size());
    if (n == 0) return {};
    Vector d = X.diag;
    Vector e = Vector::Zero(n);
    for (int i = 0; i + 1 < n; ++i) e(i) = X.off(i);
    Matrix z = Matrix::Identity(n, n);
    constexpr Real eps = std::numeric_limits<Real>::epsilon();

    // Implicit QL with Wilkinson shift (tql2). e(i) couples rows i and i+1.
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const Real dd = std::fabs(d(m)) + std::fabs(d(m + 1));
                if (std::fabs(e(m)) <= eps * dd) break;
            }
            if (m == l) break;
            if (iter++ == kMaxQlSweeps) {
                throw NumericalError("tridiagonal eigensolver did not converge for eigenvalue " +
                                     std::to_string(l) + " within " +
                                     std::to_string(kMaxQlSweeps) + " sweeps");
            }
            Real g = (d(l + 1) - d(l)) / (2 * e(l));
            Real r = std::hypot(g, Real(1));
            g = d(m) - d(l) + e(l) / (g + std::copysign(r, g));
            Real s = 1, c = 1, p = 0;
            int i = m - 1;
            bool underflow = false;
            for (; i >= l; --i) {
                const Real f = s * e(i);
                const Real b = c * e(i);
                r = std::hypot(f, g);
                e(i + 1) = r;
                if (r == 0) {
                    d(i + 1) -= p;
                    e(m) = 0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d(i + 1) - p;
                r = (d(i) - g) * s + 2 * c * b;
                p = s * r;
                d(i + 1) = g + p;
                g = c * r - b;
                for (int k = 0; k < n; ++k) {
                    const Real t = z(k, i + 1);
                    z(k, i + 1) = s * z(k, i) + c * t;
                    z(k, i) = c * z(k, i) - s * t;
                }
            }
            if (underflow) continue;
            d(l) -= p;
            e(l) = g;
            e(m) = 0;
        } while (m != l);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d(a) < d(b); });
    QuadratureRule rule;
    rule.tau.resize(n);
    rule.Lambda.resize(n, n);
    for (int j = 0; j < n; ++j) {
        rule.tau(j) = d(order[j]);
        auto col = z.col(order[j]);
        // Fix the sign so the first nonzero component is positive.
        Eigen::Index lead = 0;
        while (lead + 1 < n && col(lead) == 0) ++lead;
        rule.Lambda.col(j) = col(lead) < 0 ? Vector(-col) : Vector(col);
    }
    return rule;
}

Matrix quadrature_matrix(const QuadratureRule& rule, const std::function<Real(Real)>& w) {
    const Eigen::Index n = rule.tau.size();
    Vector wv(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        wv(j) = w(rule.tau(j));
        if (!std::isfinite(wv(j))) {
            throw NumericalError("quadrature kernel is not finite at node tau_" + std::to_string(j) +
                                 " = " + fmt(rule.tau(j)));
        }
    }
    Matrix out = rule.Lambda * wv.asDiagonal() * rule.Lambda.transpose();
    symmetrize(out);
    return out;
}

AssembledSystem assemble_system(const BasisParams& basis, const PotentialParams& p) {
    const SymTridiagonal X = build_x_matrix(basis);
    return assemble_system(basis, p, X, symtridiag_eig(X));
}

AssembledSystem assemble_system(const BasisParams& basis, const PotentialParams& p,
                                const SymTridiagonal& X, const QuadratureRule& rule) {
    const Eigen::Index n = X.size();
    for (Eigen::Index j = 0; j < n; ++j) {
        const Real t = rule.tau(j);
        if (std::fabs(1 - t) < kNodePoleTolerance || std::fabs(1 + t) < kNodePoleTolerance) {
            throw NumericalError("quadrature node tau_" + std::to_string(j) + " = " + fmt(t) +
                                 " sits on a kernel pole");
        }
    }
    const Real mu = basis.mu, nu = basis.nu;
    const Matrix minus = quadrature_matrix(rule, [](Real t) { return 1 / (1 - t); });
    const Matrix plus = quadrature_matrix(rule, [](Real t) { return 1 / (1 + t); });

    AssembledSystem sys;
    sys.H = p.C * X.dense() + (mu * mu / 2) * minus + ((nu * nu + p.A) / 2) * plus;
    const Real shift = (mu + nu + 1) / 2;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Real h = static_cast<Real>(i) + shift;
        sys.H(i, i) += Real(0.25) - p.B - h * h;
    }
    symmetrize(sys.H);
    sys.omega = -quadrature_matrix(rule, [](Real t) { return 1 / (1 - t * t); });
    return sys;
}

GeneralizedEigen generalized_spectrum(const AssembledSystem& sys) {
    const Eigen::Index n = sys.H.rows();
    if (sys.omega.rows() != n || sys.H.cols() != n || sys.omega.cols() != n) {
        throw DomainError("generalized_spectrum: H and omega must be square and of equal size");
    }
    GeneralizedEigen out;
    if (n == 0) return out;

    Eigen::LLT<Matrix> llt(sys.omega);
    if (llt.info() != Eigen::Success) {
        throw NumericalError("overlap matrix is not positive definite (Cholesky failed)");
    }
    const auto L = llt.matrixL();
    for (Eigen::Index i = 0; i < n; ++i) {
        const Real pivot = llt.matrixLLT()(i, i);
        if (!(pivot > 0) || !std::isfinite(pivot)) {
            throw NumericalError("overlap matrix is not positive definite (pivot " +
                                 std::to_string(i) + ")");
        }
    }
    // L^{-1} H L^{-T}
    Matrix reduced = L.solve(sys.H);
    reduced = L.solve(reduced.transpose()).transpose();
    symmetrize(reduced);

    Eigen::SelfAdjointEigenSolver<Matrix> es(reduced);
    if (es.info() != Eigen::Success) {
        throw NumericalError("reduced symmetric eigenproblem did not converge");
    }
    out.values = es.eigenvalues();
    out.vectors = L.transpose().solve(es.eigenvectors());

    const Real h_norm = sys.H.norm();
    for (Eigen::Index j = 0; j < n; ++j) {
        const Vector f = out.vectors.col(j);
        const Real res = (sys.H * f - out.values(j) * (sys.omega * f)).norm();
        const Real scale = h_norm * f.norm();
        out.max_residual = std::max(out.max_residual, scale > 0 ? res / scale : res);
    }
    return out;
}

BoundSpectrum bound_states(const Vector& eigenvalues) {
    BoundSpectrum out;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        if (eigenvalues(i) < kBoundThreshold)
            out.epsilons.push_back(eigenvalues(i));
        else
            ++out.discarded_nonnegative;
    }
    std::stable_sort(out.epsilons.begin(), out.epsilons.end());
    out.basis_size = static_cast<std::size_t>(eigenvalues.size());
    return out;
}

BasisParams resolve_basis(const PotentialParams& p, const SolverOptions& opts) {
    if (opts.basis_size == 0) throw DomainError("basis size must be positive");
    Real nu;
    if (opts.eliminate_nu) {
        const Real radicand = opts.mu * opts.mu - 2 * p.A;
        if (!(radicand >= 0)) {
            throw DomainError("nu elimination needs mu^2 - 2A >= 0, got " + fmt(radicand));
        }
        nu = -std::sqrt(radicand);
    } else {
        nu = opts.nu.value_or(default_nu(opts.basis_size, opts.mu));
    }
    BasisParams basis = BasisParams::with_size(opts.basis_size, opts.mu, nu);
    basis.validate();
    return basis;
}

BoundSpectrum solve_spectrum(const PotentialParams& p, const SolverOptions& opts) {
    return solve_spectrum(p, resolve_basis(p, opts));
}

BoundSpectrum solve_spectrum(const PotentialParams& p, const BasisParams& basis) {
    const AssembledSystem sys = assemble_system(basis, p);
    const GeneralizedEigen ge = generalized_spectrum(sys);
    BoundSpectrum out = bound_states(ge.values);
    out.mu_used = basis.mu;
    out.nu_used = basis.nu;
    out.max_residual = ge.max_residual;
    return out;
}

NuRule default_nu_rule(std::size_t basis_size) {
    return [basis_size](Real mu) { return default_nu(basis_size, mu); };
}

StatePlateau detect_plateau(std::size_t state, const std::vector<Real>& mu,
                            const std::vector<std::optional<Real>>& values) {
    StatePlateau out;
    out.state = state;
    const std::size_t n = values.size();
    std::size_t best_begin = 0, best_len = 0;  // length counted in agreeing pairs
    std::size_t run_begin = 0, run_len = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const bool agree = values[i] && values[i + 1] &&
                           std::fabs(*values[i + 1] - *values[i]) <
                               kPlateauThreshold * std::fabs(*values[i]);
        if (agree) {
            if (run_len == 0) run_begin = i;
            ++run_len;
            if (run_len > best_len) {
                best_len = run_len;
                best_begin = run_begin;
            }
        } else {
            run_len = 0;
        }
    }
    if (best_len == 0) return out;
    const std::size_t last = best_begin + best_len;
    Real lo = *values[best_begin], hi = lo;
    for (std::size_t i = best_begin; i <= last; ++i) {
        lo = std::min(lo, *values[i]);
        hi = std::max(hi, *values[i]);
    }
    out.delta = hi - lo;
    out.mu_begin = mu[best_begin];
    out.mu_end = mu[last];
    out.points = best_len + 1;
    return out;
}

PlateauScan plateau_scan(const PotentialParams& p, std::size_t basis_size,
                         const std::vector<Real>& mu_grid, const NuRule& nu_rule) {
    if (mu_grid.empty()) throw DomainError("plateau_scan: empty mu grid");
    if (!std::is_sorted(mu_grid.begin(), mu_grid.end()) ||
        std::adjacent_find(mu_grid.begin(), mu_grid.end()) != mu_grid.end()) {
        throw DomainError("plateau_scan: mu grid must be strictly ascending");
    }
    const NuRule rule = nu_rule ? nu_rule : default_nu_rule(basis_size);
    PlateauScan scan;
    scan.mu = mu_grid;
    std::vector<BasisParams> bases;
    for (Real mu : mu_grid) {
        const Real nu = rule(mu);
        try {
            bases.push_back(BasisParams::with_size(basis_size, mu, nu));
            bases.back().validate();
        } catch (const DomainError& e) {
            throw DomainError("plateau_scan: invalid grid point mu=" + fmt(mu) + ": " + e.what());
        }
        scan.nu.push_back(nu);
    }

    const std::size_t n = mu_grid.size();
    scan.spectra.resize(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                scan.spectra[i] = solve_spectrum(p, bases[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads =
        std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::size_t max_states = 0;
    for (const auto& s : scan.spectra) max_states = std::max(max_states, s.count());
    for (std::size_t k = 0; k < max_states; ++k) {
        std::vector<std::optional<Real>> values(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto units = scan.spectra[i].report_units();
            if (k < units.size()) values[i] = units[k];
        }
        scan.states.push_back(detect_plateau(k, mu_grid, values));
    }
    return scan;
}

}  // namespace trabound
