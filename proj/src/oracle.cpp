#include "trabound/oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "trabound/hmd_solver.hpp"
#include "trabound/special_functions.hpp"

namespace trabound {
namespace {

// Beyond t = 600 the polynomial factors risk overflow; the weight has decayed by
// at least exp(-600 delta) there, delta being the (positive) decay exponent.
constexpr Real kUpperCutoff = 600;
constexpr unsigned kMaxDepth = 20;

struct BudgetExceeded {};

}  // namespace

IntegrationResult integrate_log_coordinate(const std::function<Real(Real)>& g, Real tol) {
    IntegrationResult out;
    auto counted = [&](Real t) -> Real {
        if (++out.evaluations > kOracleEvaluationBudget) throw BudgetExceeded{};
        if (t > kUpperCutoff) return 0;
        const Real v = g(t);
        if (!std::isfinite(v)) {
            throw NumericalError("integrand is not finite at t = " + std::to_string(static_cast<double>(t)));
        }
        return v;
    };
    constexpr Real inf = std::numeric_limits<Real>::infinity();
    Real error = 0, l1 = 0;
    try {
        out.value = boost::math::quadrature::gauss_kronrod<Real, 61>::integrate(
            counted, -inf, inf, kMaxDepth, tol, &error, &l1);
    } catch (const BudgetExceeded&) {
        throw NumericalError("adaptive integration exceeded its evaluation budget");
    }
    out.abs_error_estimate = error;
    if (!std::isfinite(out.value) || !(error <= tol * std::max<Real>(1, l1))) {
        throw NumericalError("adaptive integration did not reach the requested tolerance (error " +
                             std::to_string(static_cast<double>(error)) + ")");
    }
    return out;
}

IntegrationResult integrate_half_line(const std::function<Real(Real)>& f, Real tol) {
    return integrate_log_coordinate(
        [&](Real t) {
            const Real e = std::exp(t);
            return f(1 + e) * e;
        },
        tol);
}

namespace {

// The kernel receives x - 1 = e^t so that kernels singular at x = 1 stay exact.
IntegrationResult matrix_element_shifted(const BasisParams& basis,
                                         const std::function<Real(Real)>& w_of_shift,
                                         std::size_t n, std::size_t m, Real tol) {
    if (n > basis.max_degree || m > basis.max_degree)
        throw DomainError("direct_matrix_element: index exceeds the basis degree");
    if (!(tol >= Real(1e-12))) throw DomainError("direct_matrix_element: tolerance below 1e-12");
    const JacobiPair pair = basis.pair();
    const Real norm = normalization_c(pair, n) * normalization_c(pair, m);
    return integrate_log_coordinate(
        [&](Real t) -> Real {
            const Real e = std::exp(t);
            // (x-1)^mu (x+1)^nu dx, with x+1 = 2+e^t and dx = e^t dt
            const Real log_w = (basis.mu + 1) * t +
                               basis.nu * (t > 0 ? t + std::log1p(2 / e) : std::log(2 + e));
            const Real weight = std::exp(log_w);
            if (weight == 0) return 0;
            const Real x = 1 + e;
            return norm * w_of_shift(e) * jacobi_eval(pair, n, x) * jacobi_eval(pair, m, x) * weight;
        },
        tol);
}

}  // namespace

IntegrationResult direct_matrix_element(const BasisParams& basis,
                                        const std::function<Real(Real)>& w, std::size_t n,
                                        std::size_t m, Real tol) {
    return matrix_element_shifted(basis, [&](Real e) { return w(1 + e); }, n, m, tol);
}

IntegrationResult direct_matrix_element(const BasisParams& basis, Kernel kernel, std::size_t n,
                                        std::size_t m, Real tol) {
    return matrix_element_shifted(basis, [kernel](Real e) { return kernel_value_shifted(kernel, e); },
                                  n, m, tol);
}

std::string_view kernel_name(Kernel k) {
    switch (k) {
        case Kernel::One: return "1";
        case Kernel::X: return "x";
        case Kernel::InvOneMinusX: return "1/(1-x)";
        case Kernel::InvOnePlusX: return "1/(1+x)";
        case Kernel::InvXSquaredMinusOne: return "1/(x^2-1)";
    }
    return "?";
}

Real kernel_value(Kernel k, Real x) {
    switch (k) {
        case Kernel::One: return 1;
        case Kernel::X: return x;
        case Kernel::InvOneMinusX: return 1 / (1 - x);
        case Kernel::InvOnePlusX: return 1 / (1 + x);
        case Kernel::InvXSquaredMinusOne: return 1 / (x * x - 1);
    }
    return 0;
}

Real kernel_value_shifted(Kernel k, Real e) {
    switch (k) {
        case Kernel::One: return 1;
        case Kernel::X: return 1 + e;
        case Kernel::InvOneMinusX: return -1 / e;
        case Kernel::InvOnePlusX: return 1 / (2 + e);
        case Kernel::InvXSquaredMinusOne: return 1 / (e * (2 + e));
    }
    return 0;
}

QuadratureComparison compare_quadrature(const BasisParams& basis, Kernel kernel, Real tol) {
    if (basis.max_degree > 8) throw DomainError("quadrature check is limited to degree 8");
    basis.validate();
    QuadratureComparison out{kernel, {}, {}, 0};
    const auto w = [kernel](Real x) { return kernel_value(kernel, x); };
    out.quadrature = quadrature_matrix(symtridiag_eig(build_x_matrix(basis)), w);
    const auto size = static_cast<Eigen::Index>(basis.size());
    out.direct.resize(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const Real v = direct_matrix_element(basis, kernel, static_cast<std::size_t>(i),
                                                 static_cast<std::size_t>(j), tol)
                               .value;
            out.direct(i, j) = out.direct(j, i) = v;
        }
    }
    out.max_abs_discrepancy = (out.quadrature - out.direct).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace trabound
