#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdm/casimir.hpp"

using namespace pdm;
using namespace pdm::sym;
using namespace pdm::casimir;

namespace {

Expr act(const SecondOrderOp& s, const Expr& u)
{
    Expr out = s.C * u;
    for (int a = 1; a <= 3; ++a) {
        out = out + s.B[a - 1] * diff(u, a);
        for (int b = 1; b <= 3; ++b)
            out = out + s.A(a, b) * diff(diff(u, a), b);
    }
    return out;
}

Expr act(const FirstOrderOp& q, const Expr& u)
{
    Expr s = q.eta * u;
    for (int a = 1; a <= 3; ++a)
        s = s + q.xi[a - 1] * diff(u, a);
    return -imag_unit() * s;
}

// psi = phi / r for the radial ground state and first excited s-state
// phi = r (1 + r^2)^(-3/2) and phi = r (1 - r^2)(1 + r^2)^(-5/2).
Expr ground() { return pow(Expr(1L) + r2(), mpq_class(-3, 2)); }
Expr excited() { return (Expr(1L) - r2()) * pow(Expr(1L) + r2(), mpq_class(-5, 2)); }

bool has_status(const report::VerificationReport& r, const std::string& needle, const std::string& status)
{
    for (const auto& c : r.checks)
        if (c.status == status && c.check.find(needle) != std::string::npos)
            return true;
    return false;
}

}  // namespace

TEST_CASE("so4 identity and its controls")
{
    auto r = verify_casimir_identity("so4");
    CHECK(r.passed());
    CHECK(has_status(r, "C2 = 0", "pass"));
    CHECK(has_status(r, "mutation", "pass"));
    CHECK(verify_casimir_structure("so4").passed());
}

TEST_CASE("so13 identity holds with the opposite sign")
{
    auto r = verify_casimir_identity("so13");
    CHECK(has_status(r, "C1 - (H + 9)/4", "fail"));
    CHECK(has_status(r, "C2 = 0", "pass"));
    CHECK(has_status(r, "mutation", "pass"));
    bool opposite = false;
    for (const auto& c : r.checks)
        if (c.status == "annotation" && c.detail.find("opposite-sign identity proved") != std::string::npos)
            opposite = true;
    CHECK(opposite);
    auto cp = build_casimirs("so13");
    // shift enters V, so a shift of -9 gives H + 9
    auto nine = scaled_hamiltonian("so13", 6, -9);
    auto sum = simplify(cp.C1 + scale(nine, rational(1, 4)));
    for (const auto& s : sum.slots())
        CHECK(proved_zero(s));
    CHECK(verify_casimir_structure("so13").passed());
}

TEST_CASE("so4 states from the radial closed form")
{
    auto cp = build_casimirs("so4");
    auto h = scaled_hamiltonian("so4");
    // n = 1: Etilde = 9, c1 = 0; n = 2: Etilde = 21, c1 = 3
    Expr g = ground(), e = excited();
    CHECK(proved_zero(act(h, g) - Expr(9L) * g));
    CHECK(proved_zero(act(cp.C1, g)));
    CHECK(proved_zero(act(h, e) - Expr(21L) * e));
    CHECK(proved_zero(act(cp.C1, e) - Expr(3L) * e));
    CHECK(proved_zero(act(cp.C2, e)));
    auto re = realization("so4");
    for (int a = 0; a < 3; ++a) {
        CHECK(proved_zero(act(re.L[a], g)));
        CHECK(proved_zero(act(re.B[a], g)));
    }
}

TEST_CASE("so13 state decides the sign")
{
    // k = 1/2 in the so13 radial solution: phi = r / (1 - r^2), Etilde = -5 - 4k^2 = -6
    Expr psi = pow(Expr(1L) - r2(), -1L);
    auto h = scaled_hamiltonian("so13");
    CHECK(proved_zero(act(h, psi) + Expr(6L) * psi));
    auto cp = build_casimirs("so13");
    // C1 = -(H + 9)/4 gives -3/4; the printed +(H + 9)/4 would give +3/4
    CHECK(proved_zero(act(cp.C1, psi) + rational(3, 4) * psi));
    CHECK_FALSE(proved_zero(act(cp.C1, psi) - rational(3, 4) * psi));
}

TEST_CASE("realizations")
{
    auto r = realization("so4");
    CHECK(r.ops.size() == 6);
    CHECK(r.labels.size() == 6);
    CHECK_THROWS_AS(realization("so5"), std::invalid_argument);
}

TEST_CASE("algebraic so4 spectrum")
{
    auto l3 = algebraic_spectrum_so4(3);
    CHECK(l3.etilde == 41);
    CHECK(l3.e_mu_coeff == 41);
    CHECK(l3.c1 == 8);
    CHECK(l3.q == 1);
    CHECK(l3.allowed_l == std::vector<int>{0, 1, 2});
    CHECK(proved_zero(l3.energy - (Expr(41L) * param("mu") + param("nu"))));
    CHECK_THROWS_AS(algebraic_spectrum_so4(0), std::domain_error);
    CHECK(spectrum_bridge(12).passed());
    std::string csv = spectrum_csv(3);
    CHECK(csv.rfind("n,Etilde,E_mu_coeff,E_const\n", 0) == 0);
    CHECK(csv.find("1,9,9,nu\n") != std::string::npos);
    CHECK(csv.find("3,41,41,nu\n") != std::string::npos);
}

TEST_CASE("so13 energy windows")
{
    auto w = so13_energy_window(0.5);
    CHECK(w.etilde == doctest::Approx(-5.5));
    CHECK(w.principal_window);
    CHECK_FALSE(w.subsidiary_window);
    CHECK(w.from_plus_quarter == doctest::Approx(4 * 0.5 - 9));
    CHECK(w.from_minus_quarter == doctest::Approx(-4 * 0.5 - 9));
    auto neg = so13_energy_window(-4);
    CHECK(neg.subsidiary_window);
    auto rep = so13_window_report();
    CHECK(rep.passed());
    CHECK(rep.count("annotation") >= 2);
}
