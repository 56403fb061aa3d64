#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "trabound/tra_core.hpp"

using namespace trabound;
using oracles::close_rel;

TEST_CASE("basis parameters") {
    const auto b = BasisParams::with_size(10, 1.5L, default_nu(10, 1.5L));
    CHECK(b.max_degree == 9);
    CHECK(b.size() == 10);
    CHECK(b.nu == -23.5L);
    CHECK(b.alpha() == 0.75L);
    CHECK(b.beta() == 11.75L);
    CHECK_NOTHROW(b.validate());
    CHECK_THROWS_AS(BasisParams::with_size(0, 1, -10), DomainError);
    CHECK_THROWS_AS((BasisParams{-1, -30, 3}).validate(), DomainError);
    CHECK_THROWS_AS((BasisParams{1.5L, -8.5L, 3}).validate(), DomainError);  // mu + nu = -7 = -2N - 1
    // degree N with nu = -2N - mu - 2 makes 2N + mu + nu + 2 vanish
    CHECK_THROWS_AS((BasisParams{1.5L, default_nu(10, 1.5L), 10}).validate(), DomainError);
}

TEST_CASE("energy_params") {
    const auto e = energy_params(-249.6474353L, -300);
    CHECK(close_rel(e.mu_k, 15.800235292551816932261906536L, 1e-16L));
    CHECK(close_rel(e.nu_k, -29.1487124123862459160731386561L, 1e-16L));
    CHECK(e.nu_k < 0);

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> eps_d(-500, -0.01), a_d(-400, 50);
    for (int i = 0; i < 200; ++i) {
        const Real eps = eps_d(rng), A = a_d(rng);
        if (!(eps + 2 * A < 0)) continue;
        const auto p = energy_params(eps, A);
        CHECK(close_rel(-p.mu_k * p.mu_k, eps, 1e-15L));
        CHECK(close_rel(p.nu_k * p.nu_k - p.mu_k * p.mu_k, -2 * A, 1e-12L));
    }
    CHECK_THROWS_AS(energy_params(0, -1), DomainError);
    CHECK_THROWS_AS(energy_params(1, -1), DomainError);
    CHECK_THROWS_AS(energy_params(-1, 0.5L), DomainError);
}

TEST_CASE("recursion coefficients: closed-form values") {
    const auto rc = recursion_coeffs(BasisParams::with_size(11, 1.5L, -25.5L));
    CHECK(rc.F.size() == 11);
    CHECK(rc.D.size() == 10);
    CHECK(close_rel(rc.F[0], Real(648) / 528, 1e-17L));
    CHECK(close_rel(rc.G[0], Real(-24) * -22 / 4, 1e-17L));

    // s = -5: D_0 = (2/(s+2)) sqrt(1*2*(-5)*(-4) / ((-4)(-2))) = -(2/3) sqrt 5
    const auto rc1 = recursion_coeffs({1, -6, 1});
    CHECK(close_rel(rc1.F[0], Real(7) / 3, 1e-17L));
    CHECK(close_rel(rc1.D[0], -2 * std::sqrt(Real(5)) / 3, 1e-17L));
    // F_1 would divide by 2n + mu + nu + 2 = 0
    CHECK_THROWS_AS(recursion_coeffs({1, -5, 1}), DomainError);
}

TEST_CASE("recursion coefficients: D_n < 0 for valid parameters") {
    oracles::ValidPairGen gen(13);
    for (int i = 0; i < 100; ++i) {
        const std::size_t N = 1 + static_cast<std::size_t>(i % 30);
        auto [mu, nu] = gen(N);
        const auto rc = recursion_coeffs({mu, nu, N});
        for (Real d : rc.D) CHECK(d < 0);
    }
}

TEST_CASE("G_n: product and square forms agree") {
    oracles::ValidPairGen gen(17);
    for (int i = 0; i < 20; ++i) {
        auto [mu, nu] = gen(200);
        for (std::size_t n = 0; n <= 200; ++n) {
            const Real a = g_product_form(mu, nu, n), b = g_square_form(mu, nu, n);
            CHECK(std::fabs(a - b) <= 1e-15L * std::max<Real>(1, std::fabs(a)));
        }
    }
}

TEST_CASE("associated parameters") {
    const auto a = associated_params(5, 3);
    CHECK(close_rel(a.theta, std::log(Real(3)), 1e-17L));
    CHECK(a.z == -4);
    CHECK(a.sigma == -0.25L);
    CHECK(associated_params(2, 2).theta == 0);
    CHECK_THROWS_AS(associated_params(2, 3), DomainError);
    CHECK_THROWS_AS(associated_params(2, 0), DomainError);
    CHECK_THROWS_AS(associated_params(-1, -2), DomainError);
}

TEST_CASE("H polynomial sequence: first terms") {
    const BasisParams b{1, -6, 1};
    const auto h = h_polynomial_sequence(associated_params(5, 3), b, 5, 3, 1);
    REQUIRE(h.values.size() == 2);
    CHECK(h.values[0] == 1);
    CHECK(h.log_scale == 0);
    // (B + G_0 - C F_0)/(C D_0) = (5 + 15/4 - 7)/(-2 sqrt 5) = -7/(8 sqrt 5)
    CHECK(close_rel(h.values[1], -7 / (8 * std::sqrt(Real(5))), 1e-15L));

    // H_2 by hand from the coefficient tables
    const BasisParams b2 = BasisParams::with_size(11, 1.5L, -25.5L);
    const auto rc = recursion_coeffs(b2);
    const Real B = 5, C = 3;
    const auto h2 = h_polynomial_sequence(associated_params(B, C), b2, B, C, 2);
    const Real h1 = (B + rc.G[0] - C * rc.F[0]) / (C * rc.D[0]);
    const Real expect = ((B + rc.G[1] - C * rc.F[1]) * h1 - C * rc.D[0]) / (C * rc.D[1]);
    CHECK(h2.values[1] == h1);
    CHECK(h2.values[2] == expect);

    CHECK_THROWS_AS(h_polynomial_sequence(associated_params(B, C), b, B, C, 2), DomainError);
}

TEST_CASE("H polynomial sequence: degenerate step") {
    const BasisParams b{1, -6, 1};
    CHECK_THROWS_AS(h_polynomial_sequence(associated_params(1, 1e-16L), b, 1, 1e-16L, 1), NumericalError);
}

TEST_CASE("expansion coefficients satisfy the three-term recursion") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> eps_d(-300, -0.5), a_d(-300, -1), b_d(0.1, 20), ratio_d(0.01, 1.0);
    int sets = 0;
    while (sets < 50) {
        const Real eps = eps_d(rng), A = a_d(rng), B = b_d(rng), C = B * ratio_d(rng);
        const auto e = energy_params(eps, A);
        // largest n_max allowed by mu_k + nu_k < -2 n_max - 1
        const Real room = (-(e.mu_k + e.nu_k) - 1) / 2;
        if (room < 2) continue;
        const auto n_max = static_cast<std::size_t>(std::min<Real>(std::ceil(room) - 1, 30));
        const BasisParams basis{e.mu_k, e.nu_k, n_max};
        const auto f = expansion_coefficients(e, A, B, C, n_max);
        const auto res = recursion_residual(recursion_coeffs(basis), B, C, f.values);
        REQUIRE(res.size() == n_max);
        for (std::size_t n = 0; n < res.size(); ++n)
            CHECK(std::fabs(res[n]) < 1e-10L * (1 + std::fabs(f.values[n])));
        ++sets;
    }
}

TEST_CASE("expansion coefficients at the converged ground state") {
    const Real A = -300, B = 5, C = 3;
    const auto e = energy_params(-249.6474353244L, A);
    const auto f = expansion_coefficients(e, A, B, C, 6);
    CHECK(f.values[0] == 1);
    const auto res = recursion_residual(recursion_coeffs({e.mu_k, e.nu_k, 6}), B, C, f.values);
    for (std::size_t n = 0; n < res.size(); ++n) CHECK(std::fabs(res[n]) < 1e-10L * (1 + std::fabs(f.values[n])));
    CHECK_THROWS_AS(expansion_coefficients(e, A, B, C, 7), DomainError);
    CHECK_THROWS_AS(expansion_coefficients(e, A, 2, 3, 3), DomainError);
}

TEST_CASE("recursion residual of a wrong sequence is nonzero") {
    const BasisParams basis{1.5L, -25.5L, 5};
    const auto rc = recursion_coeffs(basis);
    std::vector<Real> f(6, 1);
    const auto res = recursion_residual(rc, 5, 3, f);
    bool any = false;
    for (Real r : res) any = any || std::fabs(r) > 1e-3L;
    CHECK(any);
    CHECK(recursion_residual(rc, 5, 3, {1}).empty());
}
