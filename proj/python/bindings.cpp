// Python bindings. Values cross the boundary as double; the library works in
// long double internally.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trabound/hmd_solver.hpp"
#include "trabound/potential.hpp"
#include "trabound/special_functions.hpp"
#include "trabound/wavefunctions.hpp"

namespace py = pybind11;
using namespace trabound;

namespace {

std::vector<double> to_double(const std::vector<Real>& v) { return {v.begin(), v.end()}; }

py::dict spectrum(double A, double B, double C, std::size_t basis_size, double mu,
                  std::optional<double> nu, double lambda) {
    const PotentialParams p{A, B, C, lambda};
    SolverOptions opts{basis_size, mu, std::nullopt, false};
    if (nu) opts.nu = *nu;
    const BasisParams basis = resolve_basis(p, opts);
    BoundSpectrum s;
    if (p.A <= Real(-0.5)) s = solve_spectrum(p, basis);
    py::dict d;
    d["minus_epsilon"] = to_double(s.report_units());
    d["epsilon"] = to_double(s.epsilons);
    d["mu"] = static_cast<double>(basis.mu);
    d["nu"] = static_cast<double>(basis.nu);
    d["discarded_nonnegative"] = s.discarded_nonnegative;
    d["max_residual"] = static_cast<double>(s.max_residual);
    return d;
}

py::dict shape(double A, double B, double C, double lambda) {
    const PotentialParams p{A, B, C, lambda};
    const ShapeReport s = classify_shape(p);
    auto points = [](const std::vector<ShapePoint>& v) {
        py::list out;
        for (const auto& pt : v) {
            py::dict d;
            d["x"] = static_cast<double>(pt.x);
            d["r"] = static_cast<double>(pt.r);
            d["U"] = static_cast<double>(pt.value);
            out.append(d);
        }
        return out;
    };
    py::dict d;
    d["crossings"] = points(s.crossings);
    d["extrema"] = points(s.extrema);
    d["admits_bound_states"] = s.admits_bound_states;
    d["satisfies_B_ge_C"] = s.satisfies_B_ge_C;
    return d;
}

}  // namespace

PYBIND11_MODULE(_trabound, m) {
    m.doc() = "Tridiagonal-representation solver for a short-range singular potential";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.def("solve_spectrum", &spectrum, py::arg("A"), py::arg("B"), py::arg("C"),
          py::arg("basis_size") = 100, py::arg("mu") = 1.5, py::arg("nu") = py::none(),
          py::arg("lam") = 1.0,
          "Bound-state energies. minus_epsilon holds -2E/lambda^2 in descending order.");
    m.def("classify_shape", &shape, py::arg("A"), py::arg("B"), py::arg("C"), py::arg("lam") = 1.0);
    m.def(
        "potential_value",
        [](double A, double B, double C, double lambda, double r) {
            return static_cast<double>(potential_value({A, B, C, lambda}, r));
        },
        py::arg("A"), py::arg("B"), py::arg("C"), py::arg("lam"), py::arg("r"));
    m.def("x_of_r", [](double lambda, double r) { return static_cast<double>(x_of_r(lambda, r)); });
    m.def("r_of_x", [](double lambda, double x) { return static_cast<double>(r_of_x(lambda, x)); });
    m.def("max_basis_index", [](double A) { return max_basis_index(A); });
    m.def(
        "jacobi_eval",
        [](double mu, double nu, std::size_t n, double x) {
            return static_cast<double>(jacobi_eval({mu, nu}, n, x));
        },
        py::arg("mu"), py::arg("nu"), py::arg("n"), py::arg("x"));
    m.def(
        "normalization_c",
        [](double mu, double nu, std::size_t n) { return static_cast<double>(normalization_c({mu, nu}, n)); },
        py::arg("mu"), py::arg("nu"), py::arg("n"));
    m.def(
        "wavefunction",
        [](std::size_t k, double epsilon, double A, double B, double C, double lambda,
           const std::vector<double>& r, std::optional<std::size_t> terms) {
            const std::vector<Real> grid(r.begin(), r.end());
            return to_double(sample_wavefunction(k, epsilon, {A, B, C, lambda}, grid, terms).psi);
        },
        py::arg("k"), py::arg("epsilon"), py::arg("A"), py::arg("B"), py::arg("C"), py::arg("lam"),
        py::arg("r"), py::arg("terms") = py::none(),
        "Un-normalized psi_k sampled on an ascending grid of r > 0.");
}
