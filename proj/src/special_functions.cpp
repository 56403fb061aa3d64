#include "trabound/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace trabound {
namespace {

constexpr Real kPi = std::numbers::pi_v<Real>;

// ln Gamma for z > 0 without touching the global signgam.
Real log_gamma_positive(Real z) {
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgammal_r(z, &sign);
#else
    return std::lgamma(z);
#endif
}

// sin(pi z) with the argument reduced exactly modulo 2 first.
Real sin_pi(Real z) {
    Real r = std::fmod(z, Real(2));
    if (r < 0) r += 2;
    if (r == 0 || r == 1) return 0;
    if (r == Real(0.5)) return 1;
    if (r == Real(1.5)) return -1;
    return std::sin(kPi * r);
}

bool near_integer(Real z, Real tol) { return std::fabs(z - std::nearbyint(z)) < tol; }

std::string describe(const JacobiPair& p) {
    std::ostringstream os;
    os.precision(17);
    os << "(mu=" << static_cast<double>(p.mu) << ", nu=" << static_cast<double>(p.nu) << ")";
    return os.str();
}

void require_finite(Real x) {
    if (!std::isfinite(x)) throw DomainError("Jacobi polynomial argument is not finite");
}

void require_nondegenerate(Real d, const char* what, const JacobiPair& p, std::size_t k) {
    if (std::fabs(d) < kDegenerateDenominator) {
        std::ostringstream os;
        os << "degenerate Jacobi recursion: " << what << " vanishes at k=" << k << " for "
           << describe(p);
        throw DomainError(os.str());
    }
}

// sign and log|.| of the rising factorial (a)_n = a (a+1) ... (a+n-1).
SignedLogMagnitude log_pochhammer(Real a, std::size_t n) {
    SignedLogMagnitude out{0, 1};
    for (std::size_t i = 0; i < n; ++i) {
        const Real f = a + static_cast<Real>(i);
        if (f == 0) return {0, 0};
        if (f < 0) out.sign = -out.sign;
        out.log_abs += std::log(std::fabs(f));
    }
    return out;
}

void require_square_integrable(const JacobiPair& p, std::size_t n) {
    const Real bound = -2 * static_cast<Real>(n) - 1;
    if (!(p.mu > -1) || !(p.mu + p.nu < bound)) {
        std::ostringstream os;
        os << "basis normalization undefined for n=" << n << ": need mu > -1 and mu + nu < "
           << static_cast<double>(bound) << ", got " << describe(p);
        throw DomainError(os.str());
    }
}

Real c_from_log_norm(SignedLogMagnitude h, std::size_t n) {
    if (h.sign <= 0 || !std::isfinite(h.log_abs)) {
        std::ostringstream os;
        os << "assembled squared norm of P_" << n << " is not positive and finite";
        throw DomainError(os.str());
    }
    const Real c = std::exp(-h.log_abs / 2);
    if (!std::isfinite(c) || c <= 0) throw DomainError("normalization constant overflows");
    return c;
}

SignedLogMagnitude log_norm_gamma_form(const JacobiPair& p, std::size_t n) {
    require_square_integrable(p, n);
    const Real nn = static_cast<Real>(n);
    const Real s1 = 2 * nn + p.mu + p.nu + 1;  // negative under the constraint
    const auto poch = log_pochhammer(p.nu + 1, n);
    SignedLogMagnitude h;
    h.sign = ((n % 2 == 0) ? -1 : 1) * (s1 < 0 ? -1 : 1) * poch.sign;
    h.log_abs = (p.mu + p.nu + 1) * std::log(Real(2)) - std::log(std::fabs(s1)) +
                log_gamma_positive(nn + p.mu + 1) - log_gamma_positive(nn + 1) + poch.log_abs +
                log_gamma_positive(-nn - p.mu - p.nu) - log_gamma_positive(-p.nu);
    return h;
}

}  // namespace

Real SignedLogMagnitude::value() const {
    return sign == 0 ? Real(0) : static_cast<Real>(sign) * std::exp(log_abs);
}

Real jacobi_eval(const JacobiPair& pair, std::size_t n, Real x) {
    require_finite(x);
    const Real mu = pair.mu, nu = pair.nu;
    if (n == 0) return 1;
    Real p_prev = 1;
    Real p = (mu + nu + 2) * x / 2 + (mu - nu) / 2;
    for (std::size_t k = 1; k < n; ++k) {
        const Real kk = static_cast<Real>(k);
        const Real s = 2 * kk + mu + nu;
        require_nondegenerate(s, "2k+mu+nu", pair, k);
        require_nondegenerate(kk + mu + nu + 1, "k+mu+nu+1", pair, k);
        const Real lead = (s + 1) * ((s + 2) * s * x + mu * mu - nu * nu);
        const Real back = 2 * (kk + mu) * (kk + nu) * (s + 2);
        const Real next = (lead * p - back * p_prev) / (2 * (kk + 1) * (kk + mu + nu + 1) * s);
        p_prev = p;
        p = next;
    }
    return p;
}

Vector jacobi_sequence(const JacobiPair& pair, std::size_t n, Real x) {
    require_finite(x);
    const Real mu = pair.mu, nu = pair.nu;
    Vector out(static_cast<Eigen::Index>(n + 1));
    out(0) = 1;
    if (n == 0) return out;
    out(1) = (mu + nu + 2) * x / 2 + (mu - nu) / 2;
    for (std::size_t k = 1; k < n; ++k) {
        const Real kk = static_cast<Real>(k);
        const Real s = 2 * kk + mu + nu;
        require_nondegenerate(s, "2k+mu+nu", pair, k);
        require_nondegenerate(kk + mu + nu + 1, "k+mu+nu+1", pair, k);
        const Real lead = (s + 1) * ((s + 2) * s * x + mu * mu - nu * nu);
        const Real back = 2 * (kk + mu) * (kk + nu) * (s + 2);
        const auto i = static_cast<Eigen::Index>(k);
        out(i + 1) = (lead * out(i) - back * out(i - 1)) / (2 * (kk + 1) * (kk + mu + nu + 1) * s);
    }
    return out;
}

Real jacobi_derivative(const JacobiPair& pair, std::size_t n, Real x) {
    require_finite(x);
    if (n == 0) return 0;
    if (x == 1) throw DomainError("jacobi_derivative: the differential relation is singular at x = 1");
    const Real nn = static_cast<Real>(n);
    const Real s = 2 * nn + pair.mu + pair.nu;
    require_nondegenerate(s, "2n+mu+nu", pair, n);
    const Real pn = jacobi_eval(pair, n, x);
    const Real pm = jacobi_eval(pair, n - 1, x);
    const Real rhs = -nn * (x + (pair.nu - pair.mu) / s) * pn +
                     2 * (nn + pair.mu) * (nn + pair.nu) / s * pm;
    return rhs / (1 - x * x);
}

SignedLogMagnitude signed_log_gamma(Real z) {
    if (!std::isfinite(z)) throw DomainError("signed_log_gamma: argument is not finite");
    if (z <= 0 && near_integer(z, kGammaPoleTolerance)) {
        std::ostringstream os;
        os << "signed_log_gamma: pole of Gamma at z=" << static_cast<double>(z);
        throw DomainError(os.str());
    }
    if (z > 0) return {log_gamma_positive(z), 1};
    // Gamma(z) Gamma(1-z) = pi / sin(pi z), Gamma(1-z) > 0.
    const Real s = sin_pi(z);
    return {std::log(kPi) - std::log(std::fabs(s)) - log_gamma_positive(1 - z), s < 0 ? -1 : 1};
}

Real jacobi_norm_squared(const JacobiPair& pair, std::size_t n) {
    const auto h = log_norm_gamma_form(pair, n);
    if (h.sign <= 0) throw DomainError("squared norm is not positive");
    return std::exp(h.log_abs);
}

Real normalization_c(const JacobiPair& pair, std::size_t n) {
    return c_from_log_norm(log_norm_gamma_form(pair, n), n);
}

Real normalization_c_sine_form(const JacobiPair& pair, std::size_t n) {
    require_square_integrable(pair, n);
    const Real nn = static_cast<Real>(n);
    const Real sin_nu = sin_pi(pair.nu);
    const Real sin_sum = sin_pi(pair.mu + pair.nu + 1);
    if (sin_nu == 0 || sin_sum == 0 || near_integer(pair.nu, kGammaPoleTolerance) ||
        near_integer(pair.mu + pair.nu, kGammaPoleTolerance)) {
        throw DomainError("sine-ratio normalization is singular for integer nu or mu + nu");
    }
    const Real s1 = 2 * nn + pair.mu + pair.nu + 1;
    const auto g_nu = signed_log_gamma(nn + pair.nu + 1);
    const auto g_sum = signed_log_gamma(nn + pair.mu + pair.nu + 1);
    SignedLogMagnitude h;
    h.sign = (s1 < 0 ? -1 : 1) * g_nu.sign * g_sum.sign * (sin_nu < 0 ? -1 : 1) *
             (sin_sum < 0 ? -1 : 1);
    h.log_abs = (pair.mu + pair.nu + 1) * std::log(Real(2)) - std::log(std::fabs(s1)) +
                log_gamma_positive(nn + pair.mu + 1) + g_nu.log_abs - log_gamma_positive(nn + 1) -
                g_sum.log_abs + std::log(std::fabs(sin_nu)) - std::log(std::fabs(sin_sum));
    return c_from_log_norm(h, n);
}

}  // namespace trabound
