#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "trabound/hmd_solver.hpp"
#include "trabound/oracle.hpp"
#include "trabound/potential.hpp"
#include "trabound/wavefunctions.hpp"

namespace trabound::cli {
namespace {

using nlohmann::ordered_json;

struct Globals {
    double A = 0, B = 0, C = 0, lambda = 1;
    std::size_t basis_size = 100;
    double mu = 1.5;
    std::string nu = "auto";
    std::string format = "csv";
    std::string out_path;
    std::string config_path;
};

struct PotentialArgs {
    double r_min = 0.05, r_max = 5;
    std::size_t samples = 200;
    std::string report;
};

struct WavefunctionArgs {
    std::size_t state = 0;
    double r_min = 1e-3, r_max = 15;
    std::size_t samples = 2000;
    std::optional<std::size_t> terms;
};

struct PlateauArgs {
    double mu_min = 0.5, mu_max = 3.0;
    std::size_t mu_steps = 26;
    std::string report;
};

struct QuadratureArgs {
    int max_degree = 4;
};

// ---------------------------------------------------------------------------
// formatting

double rounded(Real v) {
    const std::string s = format_number(static_cast<double>(v));
    double back = 0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    return back;
}

ordered_json jnum(Real v) {
    if (!std::isfinite(v)) return nullptr;
    return rounded(v);
}

ordered_json jopt(const std::optional<Real>& v) { return v ? jnum(*v) : ordered_json(nullptr); }

std::string csv_num(Real v) { return format_number(static_cast<double>(v)); }

// ---------------------------------------------------------------------------
// configuration

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool flag_given(const std::vector<std::string>& args, const CLI::Option& opt) {
    for (const auto& name : opt.get_lnames()) {
        const std::string flag = "--" + name;
        for (const auto& a : args)
            if (a == flag || starts_with(a, flag + "=")) return true;
    }
    return false;
}

// Appends "--key=value" for every config-file entry not given on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args, CLI::App& app) {
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (starts_with(args[i], "--config=")) path = args[i].substr(9);
    }
    if (!path) return args;

    std::ifstream in(*path);
    if (!in) throw DomainError("cannot read config file " + *path);

    CLI::App* active = nullptr;
    for (const auto& a : args) {
        for (auto* sub : app.get_subcommands({})) {
            if (sub->get_name() == a) active = sub;
        }
        if (active) break;
    }

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError(*path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (starts_with(key, "--")) key = key.substr(2);
        if (key == "config") throw DomainError(*path + ": config files cannot nest");

        const CLI::Option* opt = app.get_option_no_throw("--" + key);
        if (!opt && active) opt = active->get_option_no_throw("--" + key);
        if (!opt) {
            bool other = false;
            for (auto* sub : app.get_subcommands({}))
                other = other || sub->get_option_no_throw("--" + key) != nullptr;
            if (other) continue;  // belongs to a subcommand that is not running
            throw DomainError(*path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        if (!flag_given(args, *opt)) args.push_back("--" + key + "=" + value);
    }
    return args;
}

PotentialParams potential_of(const Globals& g) {
    if (!(g.lambda > 0)) throw DomainError("--lambda must be positive");
    return {g.A, g.B, g.C, g.lambda};
}

std::optional<Real> parse_nu(const std::string& s) {
    if (s == "auto") return std::nullopt;
    double v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v))
        throw DomainError("--nu must be a number or 'auto', got '" + s + "'");
    return v;
}

SolverOptions solver_options(const Globals& g) {
    return SolverOptions{g.basis_size, g.mu, parse_nu(g.nu), false};
}

ordered_json parameters_json(const Globals& g, const BasisParams& basis) {
    return ordered_json{{"A", jnum(g.A)},
                        {"B", jnum(g.B)},
                        {"C", jnum(g.C)},
                        {"lambda", jnum(g.lambda)},
                        {"basis_size", g.basis_size},
                        {"mu", jnum(basis.mu)},
                        {"nu", jnum(basis.nu)}};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot write " + path);
    f << text;
    if (!f) throw DomainError("failed writing " + path);
}

// ---------------------------------------------------------------------------
// commands; each returns the serialized result

std::string cmd_spectrum(const Globals& g, std::ostream& err) {
    const PotentialParams p = potential_of(g);
    const BasisParams basis = resolve_basis(p, solver_options(g));
    const bool admissible = p.A <= Real(-0.5);
    const std::string note = "A > -1/2 admits no bound states";
    BoundSpectrum spec;
    if (admissible) spec = solve_spectrum(p, basis);

    const auto minus_eps = spec.report_units();
    if (g.format == "json") {
        ordered_json states = ordered_json::array();
        for (std::size_t n = 0; n < minus_eps.size(); ++n)
            states.push_back({{"n", n},
                              {"minus_epsilon", jnum(minus_eps[n])},
                              {"E_over_half_lambda_sq", jnum(-minus_eps[n])}});
        const auto cap = max_basis_index(p.A);
        ordered_json j{{"command", "spectrum"},
                       {"parameters", parameters_json(g, basis)},
                       {"states", states},
                       {"diagnostics",
                        {{"solved", admissible},
                         {"discarded_nonnegative", spec.discarded_nonnegative},
                         {"max_residual", jnum(spec.max_residual)},
                         {"max_bound_states", cap ? ordered_json(*cap + 1) : ordered_json(0)}}}};
        if (!admissible) j["note"] = note;
        return j.dump(2) + "\n";
    }
    if (!admissible) err << "note: " << note << "\n";
    std::string s = "n,minus_epsilon,E_over_half_lambda_sq\n";
    for (std::size_t n = 0; n < minus_eps.size(); ++n)
        s += std::to_string(n) + "," + csv_num(minus_eps[n]) + "," + csv_num(-minus_eps[n]) + "\n";
    return s;
}

ordered_json shape_json(const PotentialParams& p, const ShapeReport& s) {
    auto points = [](const std::vector<ShapePoint>& v) {
        ordered_json a = ordered_json::array();
        for (const auto& pt : v) a.push_back({{"x", jnum(pt.x)}, {"r", jnum(pt.r)}, {"U", jnum(pt.value)}});
        return a;
    };
    return ordered_json{{"gamma", jnum(p.gamma())},
                        {"xi", jnum(p.xi())},
                        {"admits_bound_states", s.admits_bound_states},
                        {"satisfies_B_ge_C", s.satisfies_B_ge_C},
                        {"crossings", points(s.crossings)},
                        {"extrema", points(s.extrema)}};
}

std::string cmd_potential(const Globals& g, const PotentialArgs& a) {
    const PotentialParams p = potential_of(g);
    if (!(a.r_min > 0) || !(a.r_max > a.r_min)) throw DomainError("need 0 < --r-min < --r-max");
    if (a.samples < 2) throw DomainError("--samples must be at least 2");
    const ShapeReport shape = classify_shape(p);  // rejects C = 0
    const Real unit = p.lambda * p.lambda * p.C / 2;

    std::vector<Real> r(a.samples), v(a.samples);
    for (std::size_t i = 0; i < a.samples; ++i) {
        r[i] = a.r_min + (Real(a.r_max) - a.r_min) * static_cast<Real>(i) / static_cast<Real>(a.samples - 1);
        v[i] = potential_value(p, r[i]) / unit;
    }
    const ordered_json shape_j = shape_json(p, shape);

    if (g.format == "json") {
        ordered_json samples = ordered_json::array();
        for (std::size_t i = 0; i < r.size(); ++i)
            samples.push_back({{"r", jnum(r[i])}, {"x", jnum(x_of_r(p.lambda, r[i]))}, {"V", jnum(v[i])}});
        ordered_json j{{"command", "potential"},
                       {"parameters",
                        {{"A", jnum(g.A)}, {"B", jnum(g.B)}, {"C", jnum(g.C)}, {"lambda", jnum(g.lambda)}}},
                       {"units", "V in units of lambda^2 C / 2"},
                       {"shape", shape_j},
                       {"samples", samples}};
        return j.dump(2) + "\n";
    }
    if (!a.report.empty()) write_file(a.report, shape_j.dump(2) + "\n");
    std::string s = "r,x,V_over_half_lambda_sq_C\n";
    for (std::size_t i = 0; i < r.size(); ++i)
        s += csv_num(r[i]) + "," + csv_num(x_of_r(p.lambda, r[i])) + "," + csv_num(v[i]) + "\n";
    return s;
}

std::string cmd_wavefunction(const Globals& g, const WavefunctionArgs& a) {
    const PotentialParams p = potential_of(g);
    if (!(a.r_min > 0) || !(a.r_max > a.r_min)) throw DomainError("need 0 < --r-min < --r-max");
    if (a.samples < 2) throw DomainError("--samples must be at least 2");
    const BasisParams basis = resolve_basis(p, solver_options(g));
    BoundSpectrum spec;
    if (p.A <= Real(-0.5)) spec = solve_spectrum(p, basis);
    if (a.state >= spec.count()) {
        throw DomainError("state " + std::to_string(a.state) + " is out of range: " +
                          std::to_string(spec.count()) + " bound states available");
    }
    const Real eps = spec.epsilons[a.state];
    const auto grid = log_r_grid(p.lambda, a.samples, Real(a.r_min) * p.lambda, Real(a.r_max) * p.lambda);
    const WavefunctionTable w = sample_wavefunction(a.state, eps, p, grid, a.terms);

    if (g.format == "json") {
        ordered_json samples = ordered_json::array();
        for (std::size_t i = 0; i < grid.size(); ++i) samples.push_back({{"r", jnum(grid[i])}, {"psi", jnum(w.psi[i])}});
        ordered_json j{{"command", "wavefunction"},
                       {"parameters", parameters_json(g, basis)},
                       {"state",
                        {{"index", a.state},
                         {"epsilon", jnum(eps)},
                         {"minus_epsilon", jnum(-eps)},
                         {"mu_k", jnum(w.mu_k)},
                         {"nu_k", jnum(w.nu_k)},
                         {"terms_used", w.terms_used},
                         {"clamped", w.clamped},
                         {"sign_changes", count_sign_changes(w.psi)}}},
                       {"samples", samples}};
        return j.dump(2) + "\n";
    }
    std::string s = "r,psi\n";
    for (std::size_t i = 0; i < grid.size(); ++i) s += csv_num(grid[i]) + "," + csv_num(w.psi[i]) + "\n";
    return s;
}

std::string cmd_plateau(const Globals& g, const PlateauArgs& a) {
    const PotentialParams p = potential_of(g);
    if (a.mu_steps == 0) throw DomainError("--mu-steps must be positive");
    if (a.mu_steps > 1 && !(a.mu_max > a.mu_min)) throw DomainError("need --mu-min < --mu-max");
    std::vector<Real> grid(a.mu_steps);
    for (std::size_t i = 0; i < a.mu_steps; ++i) {
        grid[i] = a.mu_steps == 1 ? Real(a.mu_min)
                                  : a.mu_min + (Real(a.mu_max) - a.mu_min) * static_cast<Real>(i) /
                                                   static_cast<Real>(a.mu_steps - 1);
    }
    const auto fixed_nu = parse_nu(g.nu);
    const NuRule rule = fixed_nu ? NuRule([v = *fixed_nu](Real) { return v; }) : default_nu_rule(g.basis_size);
    if (g.basis_size == 0) throw DomainError("basis size must be positive");
    const PlateauScan scan = plateau_scan(p, g.basis_size, grid, rule);

    ordered_json summary = ordered_json::array();
    for (const auto& st : scan.states)
        summary.push_back({{"state", st.state},
                           {"delta", jopt(st.delta)},
                           {"mu_begin", jopt(st.mu_begin)},
                           {"mu_end", jopt(st.mu_end)},
                           {"points", st.points}});
    const std::size_t K = scan.states.size();

    if (g.format == "json") {
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            ordered_json vals = ordered_json::array();
            for (Real e : scan.spectra[i].report_units()) vals.push_back(jnum(e));
            rows.push_back({{"mu", jnum(grid[i])}, {"nu", jnum(scan.nu[i])}, {"minus_epsilon", vals}});
        }
        ordered_json j{{"command", "plateau"},
                       {"parameters",
                        {{"A", jnum(g.A)},
                         {"B", jnum(g.B)},
                         {"C", jnum(g.C)},
                         {"lambda", jnum(g.lambda)},
                         {"basis_size", g.basis_size},
                         {"nu_rule", fixed_nu ? "fixed" : "-2N-mu-2"}}},
                       {"threshold", jnum(kPlateauThreshold)},
                       {"grid", rows},
                       {"plateaus", summary}};
        return j.dump(2) + "\n";
    }
    if (!a.report.empty()) write_file(a.report, summary.dump(2) + "\n");
    std::string s = "mu,nu";
    for (std::size_t k = 0; k < K; ++k) s += ",minus_eps_" + std::to_string(k);
    s += "\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        s += csv_num(grid[i]) + "," + csv_num(scan.nu[i]);
        const auto units = scan.spectra[i].report_units();
        for (std::size_t k = 0; k < K; ++k) s += "," + (k < units.size() ? csv_num(units[k]) : std::string());
        s += "\n";
    }
    return s;
}

std::string cmd_check_quadrature(const Globals& g, const QuadratureArgs& a) {
    if (a.max_degree < 1 || a.max_degree > 8) throw DomainError("--max-degree must be in [1, 8]");
    const auto fixed_nu = parse_nu(g.nu);
    struct Row {
        std::size_t degree;
        Real nu;
        Kernel kernel;
        Real discrepancy;
    };
    std::vector<Row> rows;
    for (int d = 1; d <= a.max_degree; ++d) {
        const std::size_t size = static_cast<std::size_t>(d) + 1;
        const Real nu = fixed_nu.value_or(default_nu(size, g.mu));
        const auto basis = BasisParams::with_size(size, g.mu, nu);
        basis.validate();
        for (Kernel k : kCheckedKernels)
            rows.push_back({basis.max_degree, nu, k, compare_quadrature(basis, k).max_abs_discrepancy});
    }
    if (g.format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows)
            arr.push_back({{"degree", r.degree},
                           {"size", r.degree + 1},
                           {"nu", jnum(r.nu)},
                           {"kernel", std::string(kernel_name(r.kernel))},
                           {"max_abs_discrepancy", jnum(r.discrepancy)}});
        ordered_json j{{"command", "check-quadrature"},
                       {"parameters", {{"mu", jnum(g.mu)}, {"max_degree", a.max_degree}}},
                       {"rows", arr}};
        return j.dump(2) + "\n";
    }
    std::string s = "degree,size,nu,kernel,max_abs_discrepancy\n";
    for (const auto& r : rows) {
        s += std::to_string(r.degree) + "," + std::to_string(r.degree + 1) + "," + csv_num(r.nu) + "," +
             std::string(kernel_name(r.kernel)) + "," + csv_num(r.discrepancy) + "\n";
    }
    return s;
}

}  // namespace

std::string format_number(double v) {
    if (v == 0) return "0";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 10);
    return std::string(buf, r.ptr);
}

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bound states of the short-range potential with 1/r, 1/r^2 and 1/r^3 singularities",
                 "trabound"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--A", g.A, "coupling of coth(lr) - 1")->required();
    app.add_option("--B", g.B, "coupling of 1/sinh^2(lr)")->required();
    app.add_option("--C", g.C, "coupling of cosh(lr)/sinh^3(lr)")->required();
    app.add_option("--lambda", g.lambda, "range parameter")->capture_default_str();
    app.add_option("--basis-size,--basis-degree", g.basis_size, "number of basis functions N")
        ->capture_default_str();
    app.add_option("--mu", g.mu, "basis parameter mu")->capture_default_str();
    app.add_option("--nu", g.nu, "basis parameter nu, or 'auto' for -2N - mu - 2")->capture_default_str();
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", g.out_path, "output file (default: standard output)");
    app.add_option("--config", g.config_path, "file of key=value lines; flags take precedence");

    auto* spectrum = app.add_subcommand("spectrum", "bound-state energies");

    PotentialArgs pa;
    auto* potential = app.add_subcommand("potential", "potential samples and shape analysis");
    potential->add_option("--r-min", pa.r_min)->capture_default_str();
    potential->add_option("--r-max", pa.r_max)->capture_default_str();
    potential->add_option("--samples", pa.samples)->capture_default_str();
    potential->add_option("--report", pa.report, "CSV mode: write the shape report (JSON) here");

    WavefunctionArgs wa;
    auto* wavefunction = app.add_subcommand("wavefunction", "un-normalized bound-state wavefunction");
    wavefunction->add_option("--state", wa.state)->capture_default_str();
    wavefunction->add_option("--r-min", wa.r_min)->capture_default_str();
    wavefunction->add_option("--r-max", wa.r_max)->capture_default_str();
    wavefunction->add_option("--samples", wa.samples)->capture_default_str();
    wavefunction->add_option("--terms", wa.terms, "series length (default: state + 1)");

    PlateauArgs pl;
    auto* plateau = app.add_subcommand("plateau", "stability scan over mu");
    plateau->add_option("--mu-min", pl.mu_min)->capture_default_str();
    plateau->add_option("--mu-max", pl.mu_max)->capture_default_str();
    plateau->add_option("--mu-steps", pl.mu_steps, "number of grid points")->capture_default_str();
    plateau->add_option("--report", pl.report, "CSV mode: write the plateau summary (JSON) here");

    QuadratureArgs qa;
    auto* quadrature = app.add_subcommand("check-quadrature", "Gauss quadrature against direct integration");
    quadrature->add_option("--max-degree", qa.max_degree)->capture_default_str();

    try {
        std::vector<std::string> args = merge_config(args_in, app);
        args.insert(args.begin(), "trabound");
        std::vector<char*> argv;
        for (auto& a : args) argv.push_back(a.data());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::ParseError& e) {
            return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
        }

        std::string text;
        if (spectrum->parsed()) text = cmd_spectrum(g, err);
        else if (potential->parsed()) text = cmd_potential(g, pa);
        else if (wavefunction->parsed()) text = cmd_wavefunction(g, wa);
        else if (plateau->parsed()) text = cmd_plateau(g, pl);
        else if (quadrature->parsed()) text = cmd_check_quadrature(g, qa);

        if (g.out_path.empty()) out << text;
        else write_file(g.out_path, text);
        return kExitOk;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace trabound::cli
