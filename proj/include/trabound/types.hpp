#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace trabound {

// All internal arithmetic runs in extended precision. The overlap matrix of the
// non-orthogonal basis is ill-conditioned (condition numbers near 1e10 at a
// hundred basis functions), so plain double loses the seventh significant digit.
using Real = long double;

using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// A parameter set outside the domain where the construction is valid.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A numerical procedure failed on otherwise valid input (non-convergence,
/// loss of definiteness, overflow).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace trabound
