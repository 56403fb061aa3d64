// Acceptance harness: one PASS/FAIL line per criterion.
//
//   acceptance               run every criterion
//   acceptance --criterion N run criterion N only
//
// Exit status is non-zero when any selected criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <Eigen/Cholesky>

#include "oracles.hpp"
#include "trabound/hmd_solver.hpp"
#include "trabound/oracle.hpp"
#include "trabound/wavefunctions.hpp"

using namespace trabound;

namespace {

const PotentialParams kTable{-300, 5, 3, 1};
constexpr std::array<std::size_t, 4> kTableSizes{10, 20, 50, 100};
constexpr std::array<std::array<double, 5>, 4> kTableColumns{{
    {249.6186960, 121.1023091, 54.5612094, 20.1791388, 4.8218491},
    {249.6474349, 121.1387777, 54.5922339, 20.1738603, 4.2733151},
    {249.6474353, 121.1387781, 54.5922342, 20.1738321, 4.2434960},
    {249.6474353, 121.1387781, 54.5922342, 20.1738321, 4.2427578},
}};

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        pass = false;
        failures.push_back(what);
    }
};

std::string sci(Real v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3Le", v);
    return buf;
}

std::vector<Real> table_spectrum(std::size_t size, Real lambda = 1) {
    PotentialParams p = kTable;
    p.lambda = lambda;
    return solve_spectrum(p, SolverOptions{size, 1.5L, std::nullopt, false}).report_units();
}

BasisParams table_basis(std::size_t size) {
    return BasisParams::with_size(size, 1.5L, default_nu(size, 1.5L));
}

// 1. Reference spectrum columns to 5e-7 absolute; N = 100 in under 5 s.
void criterion_table(Outcome& o) {
    Real worst = 0;
    for (std::size_t c = 0; c < kTableSizes.size(); ++c) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto e = table_spectrum(kTableSizes[c]);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (kTableSizes[c] == 100) {
            o.require(secs < 5, "N=100 took " + std::to_string(secs) + " s");
            o.detail << "N=100 in " << secs << " s, ";
        }
        if (e.size() != 5) {
            o.require(false, "N=" + std::to_string(kTableSizes[c]) + " gave " + std::to_string(e.size()) + " states");
            continue;
        }
        for (std::size_t k = 0; k < 5; ++k) {
            const Real d = std::fabs(e[k] - kTableColumns[c][k]);
            worst = std::max(worst, d);
            o.require(d < 5e-7L, "N=" + std::to_string(kTableSizes[c]) + " k=" + std::to_string(k) +
                                     " off by " + sci(d));
        }
    }
    o.detail << "max |diff| " << sci(worst);
}

// 2. N = 50 vs N = 100.
void criterion_convergence(Outcome& o) {
    const auto a = table_spectrum(50), b = table_spectrum(100);
    if (a.size() != 5 || b.size() != 5) return o.require(false, "expected five states");
    for (std::size_t k = 0; k < 5; ++k) {
        const Real d = std::fabs(a[k] - b[k]);
        o.require(d < (k < 4 ? 1e-6L : 1e-2L), "k=" + std::to_string(k) + " moved " + sci(d));
        o.detail << (k ? ", " : "") << "k" << k << ":" << sci(d);
    }
}

// 3. Gauss quadrature against direct integration for degree <= 4.
void criterion_quadrature(Outcome& o) {
    for (std::size_t deg = 1; deg <= 4; ++deg) {
        const BasisParams basis = table_basis(deg + 1);
        for (Kernel k : kCheckedKernels) {
            const auto cmp = compare_quadrature(basis, k);
            const Real tol = k == Kernel::X ? 1e-9L : 1e-7L;
            if (deg == 4) o.detail << (k == Kernel::X ? "" : ", ") << kernel_name(k) << ":" << sci(cmp.max_abs_discrepancy);
            o.require(cmp.max_abs_discrepancy < tol, "deg " + std::to_string(deg) + " w=" +
                                                          std::string(kernel_name(k)) + " off by " +
                                                          sci(cmp.max_abs_discrepancy));
        }
    }
    o.detail << " (degree 4)";
}

// 4. Jacobi identities on randomized valid parameters.
void criterion_jacobi(Outcome& o) {
    oracles::ValidPairGen gen(2024);
    Real worst_orth = 0, worst_sym = 0, worst_de = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t N = static_cast<std::size_t>(trial % 5);
        auto [mu, nu] = gen(N);
        const JacobiPair p{mu, nu};
        for (std::size_t n = 0; n <= N; ++n) {
            for (std::size_t m = 0; m <= n; ++m) {
                const Real cn = normalization_c(p, n), cm = normalization_c(p, m);
                const Real a6 = integrate_log_coordinate(
                                    [&](Real t) {
                                        const Real e = std::exp(t);  // x - 1
                                        return std::exp((mu + 1) * t) * std::pow(2 + e, nu) *
                                               jacobi_eval(p, n, 1 + e) * jacobi_eval(p, m, 1 + e);
                                    },
                                    1e-10L)
                                    .value;
                const Real a7 = integrate_log_coordinate(
                                    [&](Real t) {
                                        const Real y = std::exp(t);
                                        return std::exp((mu + 1) * t) * std::pow(y + 1, nu) *
                                               jacobi_eval(p, n, 2 * y + 1) * jacobi_eval(p, m, 2 * y + 1);
                                    },
                                    1e-10L)
                                    .value *
                                std::pow(Real(2), mu + nu + 1);
                const Real delta = n == m ? 1 : 0;
                worst_orth = std::max({worst_orth, std::fabs(cn * cm * a6 - delta), std::fabs(cn * cm * a7 - delta)});
            }
        }
    }
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> mu_d(-0.9, 6), nu_d(-30, -2), x_d(1, 5);
    for (int i = 0; i < 100; ++i) {
        const Real mu = mu_d(rng), nu = nu_d(rng), x = x_d(rng);
        const std::size_t n = static_cast<std::size_t>(i % 5);
        const Real a = jacobi_eval({mu, nu}, n, x);
        const Real b = (n % 2 ? -1 : 1) * jacobi_eval({nu, mu}, n, -x);
        Real scale = 0;
        for (std::size_t k = 0; k <= n; ++k) scale = std::max(scale, std::fabs(jacobi_eval({mu, nu}, k, x)));
        worst_sym = std::max(worst_sym, std::fabs(a - b) / std::max(std::fabs(a), scale));

        const JacobiPair p{mu, nu};
        auto P = [&](Real t) { return jacobi_eval(p, n, t); };
        const Real h = 1e-4L * x;
        const Real d1 = oracles::central_difference(P, x, h), d2 = oracles::second_difference(P, x, h);
        const Real t2 = (1 - x * x) * d2, t1 = -((mu + nu + 2) * x + mu - nu) * d1;
        const Real t0 = static_cast<Real>(n) * (static_cast<Real>(n) + mu + nu + 1) * P(x);
        const Real s = std::max({std::fabs(t2), std::fabs(t1), std::fabs(t0), Real(1e-300)});
        worst_de = std::max(worst_de, std::fabs(t2 + t1 + t0) / s);
    }
    o.require(worst_orth < 1e-8L, "orthogonality off by " + sci(worst_orth));
    o.require(worst_sym < 1e-10L, "symmetry off by " + sci(worst_sym));
    o.require(worst_de < 1e-6L, "DE residual " + sci(worst_de));
    o.detail << "orth " << sci(worst_orth) << ", sym " << sci(worst_sym) << ", DE " << sci(worst_de);
}

// 5. Three-term recursion of the expansion coefficients.
void criterion_recursion(Outcome& o) {
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> eps_d(-300, -0.5), a_d(-300, -1), b_d(0.1, 20), ratio_d(0.01, 1.0);
    int sets = 0;
    Real worst = 0;
    while (sets < 50) {
        const Real eps = eps_d(rng), A = a_d(rng), B = b_d(rng), C = B * ratio_d(rng);
        const auto e = energy_params(eps, A);
        const Real room = (-(e.mu_k + e.nu_k) - 1) / 2;
        if (room < 2) continue;
        const auto n_max = static_cast<std::size_t>(std::min<Real>(std::ceil(room) - 1, 30));
        const auto f = expansion_coefficients(e, A, B, C, n_max);
        const auto res = recursion_residual(recursion_coeffs({e.mu_k, e.nu_k, n_max}), B, C, f.values);
        for (std::size_t n = 0; n < res.size(); ++n)
            worst = std::max(worst, std::fabs(res[n]) / (1 + std::fabs(f.values[n])));
        ++sets;
    }
    o.require(worst < 1e-10L, "residual " + sci(worst));
    o.detail << "50 sets, max scaled residual " << sci(worst);
}

// 6. Structural invariants.
void criterion_structure(Outcome& o) {
    // margin above 1 keeps 2N + mu + nu + 2 < 0, so every moment the nodes need exists
    oracles::ValidPairGen gen(606, 1.01);
    Real min_tau = 1e300L;
    for (int i = 0; i < 100; ++i) {
        const std::size_t deg = static_cast<std::size_t>(i % 20);
        auto [mu, nu] = gen(deg);
        min_tau = std::min(min_tau, symtridiag_eig(build_x_matrix({mu, nu, deg})).tau.minCoeff());
    }
    for (std::size_t N : kTableSizes)
        min_tau = std::min(min_tau, symtridiag_eig(build_x_matrix(table_basis(N))).tau.minCoeff());
    o.require(min_tau > 1, "node at " + sci(min_tau));

    for (std::size_t N : kTableSizes) {
        const auto sys = assemble_system(table_basis(N), kTable);
        Eigen::LLT<Matrix> llt(sys.omega);
        o.require(llt.info() == Eigen::Success, "omega not positive definite at N=" + std::to_string(N));
    }

    const auto ref = table_spectrum(100, 1);
    Real drift = 0;
    for (Real lambda : {0.5L, 2.0L}) {
        const auto e = table_spectrum(100, lambda);
        if (e.size() != ref.size()) {
            o.require(false, "state count depends on lambda");
            continue;
        }
        for (std::size_t k = 0; k < e.size(); ++k) drift = std::max(drift, std::fabs(e[k] - ref[k]) / std::fabs(ref[k]));
    }
    o.require(drift <= 1e-12L, "lambda drift " + sci(drift));

    const std::size_t cap = *max_basis_index(kTable.A) + 1;
    std::size_t most = 0;
    for (std::size_t N : {5, 10, 20, 50, 100, 150})
        for (Real mu : {0.0L, 1.5L, 3.0L})
            most = std::max(most, solve_spectrum(kTable, SolverOptions{N, mu, std::nullopt, false}).count());
    o.require(most <= cap, "found " + std::to_string(most) + " bound states");
    o.detail << "min tau " << static_cast<double>(min_tau) << ", lambda drift " << sci(drift) << ", max count "
             << most << " <= " << cap;
}

// 7. Wavefunction nodes, tail and small-r behaviour.
void criterion_wavefunctions(Outcome& o) {
    const auto eps = solve_spectrum(kTable, SolverOptions{100, 1.5L, std::nullopt, false}).epsilons;
    if (eps.size() != 5) return o.require(false, "expected five states");
    const auto grid = log_r_grid(kTable.lambda);
    Real worst_slope = 0;
    for (std::size_t k = 0; k < 5; ++k) {
        const auto w = sample_wavefunction(k, eps[k], kTable, grid);
        const std::size_t nodes = count_sign_changes(w.psi);
        o.require(nodes == k, "state " + std::to_string(k) + " has " + std::to_string(nodes) + " sign changes");
        const std::size_t a = grid.size() - 2, b = grid.size() - 1;
        const Real slope = (std::log(std::fabs(w.psi[b])) - std::log(std::fabs(w.psi[a]))) / (grid[b] - grid[a]);
        const Real rel = std::fabs(slope + w.mu_k * kTable.lambda) / (w.mu_k * kTable.lambda);
        worst_slope = std::max(worst_slope, rel);
        o.require(rel < 0.01L, "state " + std::to_string(k) + " tail slope off by " + sci(rel));
        const bool rising = std::fabs(w.psi[0]) < std::fabs(w.psi[1]) && std::fabs(w.psi[1]) < std::fabs(w.psi[2]);
        o.require(rising, "state " + std::to_string(k) + " does not vanish toward r=0");
    }
    o.detail << "nodes 0..4, worst tail slope error " << sci(worst_slope);
}

// 8. Plateau of stability over mu at N = 100.
void criterion_plateau(Outcome& o) {
    std::vector<Real> grid;
    for (int i = 0; i <= 25; ++i) grid.push_back(Real(5 + i) / 10);
    const auto scan = plateau_scan(kTable, 100, grid, default_nu_rule(100));
    if (scan.states.size() < 5) return o.require(false, "fewer than five states in the scan");
    for (std::size_t k = 0; k < 5; ++k) {
        const auto& s = scan.states[k];
        o.require(s.contains(1.5L), "state " + std::to_string(k) + " plateau misses mu=1.5");
        if (s.mu_begin)
            o.detail << "k" << k << ":[" << static_cast<double>(*s.mu_begin) << "," << static_cast<double>(*s.mu_end)
                     << "] ";
    }
    const auto& d0 = scan.states[0].delta;
    const auto& d4 = scan.states[4].delta;
    o.require(d0 && d4 && *d0 <= *d4, "Delta_0 > Delta_4");
    if (d0 && d4) o.detail << "Delta_0 " << sci(*d0) << " <= Delta_4 " << sci(*d4);
}

// 9. Shape analysis.
void criterion_shape(Outcome& o) {
    const PotentialParams ext_p{17, 7, 1, 1};
    const auto s1 = classify_shape(ext_p);
    o.require(s1.extrema.size() == 2, "expected two extrema");
    if (s1.extrema.size() == 2) {
        o.require(std::fabs(s1.extrema[0].x - 2) < 1e-15L && std::fabs(s1.extrema[1].x - Real(8) / 3) < 1e-15L,
                  "extrema misplaced");
    }
    const PotentialParams cross_p{-2, 2, 1, 1};
    const auto s2 = classify_shape(cross_p);
    const Real exact = (1 + std::sqrt(Real(17))) / 2;
    o.require(s2.crossings.size() == 1, "expected one admissible crossing");
    const auto roots = oracles::all_roots([&](Real x) { return potential_u(cross_p, x); }, 1 + 1e-9L, 50);
    o.require(roots.size() == 1, "root-finder found " + std::to_string(roots.size()) + " roots");
    if (s2.crossings.size() == 1 && roots.size() == 1) {
        o.require(std::fabs(s2.crossings[0].x - exact) < 1e-12L, "crossing off the closed form");
        o.require(std::fabs(s2.crossings[0].x - roots[0]) < 1e-9L, "crossing disagrees with the root-finder");
        o.detail << "x+ = " << static_cast<double>(s2.crossings[0].x) << ", root-finder diff "
                 << sci(std::fabs(s2.crossings[0].x - roots[0]));
    }
}

struct Criterion {
    const char* title;
    void (*run)(Outcome&);
};

constexpr std::array<Criterion, 9> kCriteria{{
    {"reference spectrum to 5e-7", criterion_table},
    {"N=50 vs N=100 convergence", criterion_convergence},
    {"quadrature vs direct integration", criterion_quadrature},
    {"Jacobi identities", criterion_jacobi},
    {"expansion-coefficient recursion", criterion_recursion},
    {"structural invariants", criterion_structure},
    {"wavefunction properties", criterion_wavefunctions},
    {"mu plateau at N=100", criterion_plateau},
    {"potential shape analysis", criterion_shape},
}};

bool run_one(std::size_t index) {
    Outcome o;
    try {
        kCriteria[index].run(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << index + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  "
              << kCriteria[index].title << " | " << o.detail.str();
    for (std::size_t i = 0; i < o.failures.size() && i < 8; ++i)
        std::cout << (i ? "; " : " | failed: ") << o.failures[i];
    if (o.failures.size() > 8) std::cout << "; ... " << o.failures.size() - 8 << " more";
    std::cout << std::endl;
    return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
        const int c = std::atoi(argv[2]);
        if (c < 1 || c > static_cast<int>(kCriteria.size())) {
            std::cerr << "criterion must be 1.." << kCriteria.size() << "\n";
            return 2;
        }
        return run_one(static_cast<std::size_t>(c - 1)) ? 0 : 1;
    }
    if (argc != 1) {
        std::cerr << "usage: acceptance [--criterion N]\n";
        return 2;
    }
    bool all = true;
    for (std::size_t i = 0; i < kCriteria.size(); ++i) all = run_one(i) && all;
    return all ? 0 : 1;
}
