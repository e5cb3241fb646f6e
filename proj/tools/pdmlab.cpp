#include "pdm/casimir.hpp"
#include "pdm/catalog.hpp"
#include "pdm/conformal.hpp"
#include "pdm/spectral.hpp"
#include "pdm/transform.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace pdm;

namespace {

struct Globals {
    std::string json_path;
    std::uint64_t seed = sym::ZeroTestPolicy{}.seed;
    int points = sym::ZeroTestPolicy{}.points;
    double tol = sym::ZeroTestPolicy{}.tol;
    int jobs = 1;

    sym::ZeroTestPolicy policy() const
    {
        sym::ZeroTestPolicy p;
        p.seed = seed;
        p.points = points;
        p.tol = tol;
        return p;
    }
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int emit(const Globals& g, const std::vector<report::VerificationReport>& sections, bool quiet = false)
{
    report::ReportDocument doc;
    doc.version = report::tool_version();
    doc.policy = g.policy();
    doc.sections = sections;
    if (!quiet)
        std::cout << doc.to_text();
    if (!g.json_path.empty()) {
        std::string text = doc.to_json().dump(2) + "\n";
        if (g.json_path == "-") {
            std::cout << text;
        } else {
            std::ofstream out(g.json_path);
            if (!out)
                throw std::runtime_error("cannot write " + g.json_path);
            out << text;
        }
    }
    return doc.passed() ? 0 : 1;
}

std::array<sym::Expr, 3> parse_triple(const std::string& s)
{
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        parts.push_back(item);
    if (parts.size() != 3)
        throw UsageError("expected three comma-separated values, got '" + s + "'");
    return {sym::parse(parts[0]), sym::parse(parts[1]), sym::parse(parts[2])};
}

Scalar parse_scalar(const std::string& s)
{
    sym::Expr e = sym::normalize(sym::parse(s));
    if (!e.is_num())
        throw UsageError("'" + s + "' is not a number");
    return e.num();
}

// ---------------------------------------------------------------- catalog

struct CatalogArgs {
    std::string action;
    int entry = 0;
    bool all = false;
};

int run_catalog(const Globals& g, const CatalogArgs& a)
{
    if (a.action == "list") {
        for (const auto& e : catalog::entries()) {
            std::cout << std::setw(2) << e.id << "  f = " << sym::to_string(e.f) << "\n    V = " << sym::to_string(e.V)
                      << "\n    integrals:";
            for (const auto& c : e.integrals)
                std::cout << " " << conf::combo_name(c) << ";";
            std::cout << "\n";
        }
        return 0;
    }
    if (a.all == (a.entry != 0))
        throw UsageError("catalog verify needs exactly one of --entry N or --all");
    if (a.all)
        return emit(g, catalog::verify_all(g.policy(), g.jobs));
    if (a.entry < 1 || a.entry > catalog::kEntries)
        throw UsageError("--entry must lie in 1..18");
    return emit(g, {catalog::verify_entry(a.entry, g.policy())});
}

// ---------------------------------------------------------------- algebra

struct AlgebraArgs {
    std::string check;
    bool subalgebras = false;
    bool rows = false;
    bool determining = false;
    bool families = false;
};

report::VerificationReport determining_report()
{
    report::VerificationReport rep;
    rep.title = "determining equations of [H, Q]";
    for (const auto& d : ops::extract_determining(ops::abstract_hamiltonian(), ops::abstract_integral())) {
        if (d.matched)
            rep.pass(d.label, "matches reference up to factor", "symbolic", "factor " + d.factor.str());
        else
            rep.fail(d.label, "matches reference up to factor", "symbolic", sym::to_string(d.residual));
    }
    return rep;
}

int run_algebra(const Globals& g, const AlgebraArgs& a)
{
    std::vector<report::VerificationReport> out;
    if (!a.check.empty())
        out.push_back(conf::verify_algebra(a.check));
    if (a.subalgebras)
        for (const auto& s : conf::subalgebras())
            out.push_back(conf::subalgebra_closure(s));
    if (a.rows)
        out.push_back(conf::compare_generator_rows());
    if (a.determining)
        out.push_back(determining_report());
    if (a.families)
        for (const auto& n : catalog::worked_families())
            out.push_back(catalog::verify_worked_family(n, g.policy()));
    if (out.empty())
        throw UsageError("algebra needs --check, --subalgebras, --rows, --determining or --families");
    return emit(g, out);
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
    std::string system = "so4";
    int l = 0;
    int count = 3;
    int grid = 4000;
    double rmin = 1e-3;
    double rmax = 30;
    std::string outer = "dirichlet";
    bool richardson = false;
    int kappa = 0;
    double etilde = 1;
    double omega = 1;
    bool verify = false;
};

int run_spectrum(const Globals& g, const SpectrumArgs& a)
{
    using namespace spectral;
    if (a.verify)
        return emit(g, {verify_spectral()});
    System sys = parse_system(a.system);
    report::VerificationReport rep;
    rep.title = std::string("radial spectrum ") + system_name(sys);
    if (sys == System::Scale) {
        auto s = ClosedFormSolution::soso(a.kappa, a.etilde, a.omega);
        auto smp = default_samples(s);
        double res = closed_form_residual(s, smp);
        double printed = soso_printed_index_residual(s, smp);
        std::cout << std::setprecision(6) << s.name() << " beta=" << s.bessel_index() << " residual=" << res
                  << " printed_index_residual=" << printed << "\n";
        report::CheckRecord c{s.name(), "", "Bessel residual", "float", res < 1e-8 ? "pass" : "fail", res,
                              int(smp.size()), "index sqrt(kappa^2+1-E)"};
        rep.add(c);
        return emit(g, {rep}, true);
    }
    if (a.count < 1)
        throw UsageError("--count must be positive");
    RadialProblem p;
    p.system = sys;
    p.l = a.l;
    p.grid_points = a.grid;
    p.r_min = a.rmin;
    p.r_max = sys == System::So13 && a.rmax >= 1 ? 0.99 : a.rmax;
    if (a.outer == "asymptotic")
        p.outer = RadialProblem::Outer::Asymptotic;
    else if (a.outer != "dirichlet")
        throw UsageError("--outer must be dirichlet or asymptotic");
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (sys == System::So13) {
        std::vector<double> deltas{1 - p.r_max};
        for (int i = 0; i < 4; ++i)
            deltas.push_back(deltas.back() / 2);
        auto d = so13_drift(p.l, deltas, p.grid_points);
        std::cout << "delta,lowest_lambda\n" << std::setprecision(12);
        for (std::size_t i = 0; i < d.deltas.size(); ++i)
            std::cout << d.deltas[i] << ',' << d.lowest[i] << '\n';
        if (d.monotone)
            rep.pass("so13", "lowest eigenvalue drifts monotonically as the cut approaches r = 1", "float");
        else
            rep.fail("so13", "lowest eigenvalue drifts monotonically as the cut approaches r = 1", "float");
        return emit(g, {rep}, true);
    }
    FdStudy st = fd_study(p, a.count);
    const auto& vals = a.richardson ? st.richardson : st.coarse;
    int first_n = p.l + 1;
    std::cout << eigen_csv(p, vals, first_n);
    std::cout << "n,Etilde,E\n";
    for (std::size_t i = 0; i < vals.size(); ++i) {
        int n = first_n + int(i);
        auto lvl = casimir::algebraic_spectrum_so4(n);
        std::cout << n << ',' << lvl.etilde << ',' << sym::to_string(lvl.energy) << '\n';
        double rel = std::abs(vals[i] - so4_lambda(n)) / so4_lambda(n);
        report::CheckRecord c{"so4 l=" + std::to_string(p.l), "", "n=" + std::to_string(n) + " eigenvalue",
                              "float", rel < 5e-3 ? "pass" : "fail", rel, 0, ""};
        rep.add(c);
    }
    for (const auto& w : st.warnings) {
        std::cerr << "warning: " << w << "\n";
        rep.annotate("so4", "grid refinement", w);
    }
    return emit(g, {rep}, true);
}

// ---------------------------------------------------------------- casimir

int run_casimir(const Globals& g, const std::string& system, int levels)
{
    if (system != "so4" && system != "so13")
        throw UsageError("--system must be so4 or so13");
    std::vector<report::VerificationReport> out{casimir::verify_casimir_identity(system),
                                                casimir::verify_casimir_structure(system)};
    if (system == "so4") {
        out.push_back(casimir::spectrum_bridge(levels));
        std::cout << casimir::spectrum_csv(levels);
    } else {
        out.push_back(casimir::so13_window_report());
    }
    return emit(g, out);
}

// ---------------------------------------------------------------- transform

struct TransformArgs {
    std::string kind;
    int entry = 0;
    std::string f, V;
    std::string nu = "0,0,0";
    std::string cayley;
    std::string k = "2";
    int weight = 0;
    bool has_weight = false;
};

int run_transform(const Globals& g, const TransformArgs& a)
{
    ops::PDMHamiltonian h;
    std::string source;
    if (a.entry) {
        if (a.entry < 1 || a.entry > catalog::kEntries)
            throw UsageError("--entry must lie in 1..18");
        h = catalog::entry(a.entry).hamiltonian();
        source = "entry " + std::to_string(a.entry);
    } else if (!a.f.empty() && !a.V.empty()) {
        h = {sym::parse(a.f), sym::parse(a.V)};
        source = "f, V";
    } else {
        throw UsageError("transform needs --entry N or both --f and --V");
    }
    conf::TransformSpec t;
    if (a.kind == "shift") {
        t = conf::TransformSpec::shift(parse_triple(a.nu));
    } else if (a.kind == "rotation") {
        if (a.cayley.empty())
            throw UsageError("rotation needs --cayley a,b,c");
        auto v = parse_triple(a.cayley);
        t = conf::TransformSpec::rotation_cayley(parse_scalar(sym::to_string(v[0])), parse_scalar(sym::to_string(v[1])),
                                                 parse_scalar(sym::to_string(v[2])));
    } else if (a.kind == "dilatation") {
        t = conf::TransformSpec::dilatation(parse_scalar(a.k));
    } else if (a.kind == "inversion") {
        t = conf::TransformSpec::inversion(a.has_weight ? std::optional<int>(a.weight) : std::nullopt);
    } else {
        throw UsageError("--kind must be shift, rotation, dilatation or inversion");
    }
    report::VerificationReport rep;
    rep.title = t.name() + " of " + source;
    try {
        auto r = conf::transform_hamiltonian(t, h);
        std::string fs = sym::to_string(r.h.f), vs = sym::to_string(r.h.V);
        std::cout << "f' = " << fs << "\nV' = " << vs << "\n";
        if (t.kind == conf::TransformSpec::Kind::Inversion)
            std::cout << "weight = " << r.weight << "\n";
        rep.pass(source, "position-dependent-mass form preserved", "symbolic", "f' = " + fs + ", V' = " + vs);
        if (t.kind == conf::TransformSpec::Kind::Inversion)
            rep.annotate(source, "wavefunction weight", "|y|^" + std::to_string(r.weight));
    } catch (const conf::FormError& e) {
        std::cerr << "error: " << e.what() << "\nobstruction: " << e.obstruction << "\n";
        rep.fail(source, "position-dependent-mass form preserved", "symbolic", e.obstruction);
    }
    return emit(g, {rep}, true);
}

// ---------------------------------------------------------------- expr

int run_expr(const Globals& g, const std::string& text, int axis)
{
    sym::Expr e = sym::parse(text);
    sym::Expr n = sym::normalize(e);
    std::string printed = sym::to_string(e);
    std::cout << "parsed:     " << printed << "\nnormalized: " << sym::to_string(n) << "\n";
    if (axis)
        std::cout << "d/dx" << axis << ":     " << sym::to_string(sym::normalize(sym::diff(e, axis))) << "\n";
    report::VerificationReport rep;
    rep.title = "expression round trip";
    auto z = sym::is_zero(sym::parse(printed) - e, g.policy());
    rep.add(report::from_zero(z, printed, "", "parse(print(e)) = e"));
    return emit(g, {rep}, true);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Verification harness for position-dependent-mass Hamiltonians and their symmetry algebras"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--json", g.json_path, "Write the JSON report to PATH ('-' for stdout)");
    app.add_option("--seed", g.seed, "Seed for numeric zero tests");
    app.add_option("--points", g.points, "Sample points for numeric zero tests")->check(CLI::PositiveNumber);
    app.add_option("--tol", g.tol, "Tolerance for numeric zero tests")->check(CLI::PositiveNumber);
    app.add_option("--jobs", g.jobs, "Worker threads for --all")->check(CLI::PositiveNumber);

    CatalogArgs ca;
    auto* cat = app.add_subcommand("catalog", "List or verify catalog entries");
    cat->add_option("action", ca.action, "list or verify")->required()->check(CLI::IsMember({"list", "verify"}));
    cat->add_option("--entry", ca.entry, "Entry number 1..18");
    cat->add_flag("--all", ca.all, "Verify every entry");

    AlgebraArgs aa;
    auto* alg = app.add_subcommand("algebra", "Structure constants and subalgebra closure");
    alg->add_option("--check", aa.check, "c3, so14, so4 or so13")->check(CLI::IsMember({"c3", "so14", "so4", "so13"}));
    alg->add_flag("--subalgebras", aa.subalgebras, "Closure of every listed subalgebra");
    alg->add_flag("--rows", aa.rows, "Printed generator rows against the operator realization");
    alg->add_flag("--determining", aa.determining, "Determining equations from [H, Q]");
    alg->add_flag("--families", aa.families, "Worked example families");

    SpectrumArgs sa;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Radial eigenvalues and closed-form residuals");
    spectrum_cmd->add_option("--system", sa.system, "so4, so13 or scale")->check(CLI::IsMember({"so4", "so13", "scale"}));
    spectrum_cmd->add_option("--l", sa.l, "Angular quantum number")->check(CLI::NonNegativeNumber);
    spectrum_cmd->add_option("--count", sa.count, "Number of eigenvalues");
    spectrum_cmd->add_option("--grid", sa.grid, "Grid nodes including both ends");
    spectrum_cmd->add_option("--rmin", sa.rmin, "Inner end of the radial domain");
    spectrum_cmd->add_option("--rmax", sa.rmax, "Outer end of the radial domain");
    spectrum_cmd->add_option("--outer", sa.outer, "Outer boundary: dirichlet or asymptotic");
    spectrum_cmd->add_flag("--richardson", sa.richardson, "Report extrapolated eigenvalues");
    spectrum_cmd->add_option("--kappa", sa.kappa, "Scale system: kappa");
    spectrum_cmd->add_option("--etilde", sa.etilde, "Scale system: energy parameter");
    spectrum_cmd->add_option("--omega", sa.omega, "Scale system: omega");
    spectrum_cmd->add_flag("--verify", sa.verify, "Run the full radial verification suite");

    std::string cas_system = "so4";
    int cas_levels = 6;
    auto* cas = app.add_subcommand("casimir", "Casimir operator identities");
    cas->add_option("--system", cas_system, "so4 or so13");
    cas->add_option("--levels", cas_levels, "Levels in the so4 spectrum table")->check(CLI::PositiveNumber);

    TransformArgs ta;
    auto* tr = app.add_subcommand("transform", "Apply an equivalence transformation");
    tr->add_option("--kind", ta.kind, "shift, rotation, dilatation or inversion")->required();
    tr->add_option("--entry", ta.entry, "Catalog entry 1..18");
    tr->add_option("--f", ta.f, "Mass function f");
    tr->add_option("--V", ta.V, "Potential V");
    tr->add_option("--nu", ta.nu, "Shift vector a,b,c");
    tr->add_option("--cayley", ta.cayley, "Rotation parameters a,b,c");
    tr->add_option("--k", ta.k, "Dilatation factor");
    auto* wopt = tr->add_option("--weight", ta.weight, "Inversion weight exponent");

    std::string text;
    int axis = 0;
    auto* ex = app.add_subcommand("expr", "Parse, print and normalize an expression");
    ex->add_option("text", text, "Expression")->required();
    ex->add_option("--diff", axis, "Differentiate with respect to x1, x2 or x3")->check(CLI::Range(0, 3));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*cat)
            return run_catalog(g, ca);
        if (*alg)
            return run_algebra(g, aa);
        if (*spectrum_cmd)
            return run_spectrum(g, sa);
        if (*cas)
            return run_casimir(g, cas_system, cas_levels);
        if (*tr) {
            ta.has_weight = wopt->count() > 0;
            return run_transform(g, ta);
        }
        if (*ex)
            return run_expr(g, text, axis);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const sym::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
