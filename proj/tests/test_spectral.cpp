#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdm/spectral.hpp"

#include <algorithm>
#include <cmath>

using namespace pdm;
using namespace pdm::spectral;

namespace {

// Reference values computed with mpmath at 30 digits.
struct Ref {
    double a, b, c, z, value;
};

const Ref kHyp[] = {
    {0.2, 1.3, 2.7, 0.93, 1.16243135244145},
    {0.2, 1.3, 2.7, -3.5, 0.8336422197223},
};

// Matrix of the three-point scheme assembled from the coefficient formulas.
struct Dense {
    std::vector<double> d, e, r;
};

Dense assemble_reference(int l, double r0, double r1, int n)
{
    Dense m;
    double h = (r1 - r0) / (n - 1);
    auto p = [](double r) { return (r * r + 1) * (r * r + 1); };
    for (int i = 1; i < n - 1; ++i) {
        double r = r0 + i * h;
        m.r.push_back(r);
        m.d.push_back((p(r + h / 2) + p(r - h / 2)) / (h * h) + p(r) * l * (l + 1) / (r * r) - 2 * r * r);
        if (i < n - 2)
            m.e.push_back(-p(r + h / 2) / (h * h));
    }
    return m;
}

}  // namespace

TEST_CASE("self-adjoint form reproduces the radial operators")
{
    for (int l = 0; l <= 3; ++l) {
        CHECK(sturm_liouville_matches(System::So4, l));
        CHECK(sturm_liouville_matches(System::So13, l));
    }
}

TEST_CASE("problem validation")
{
    RadialProblem p;
    CHECK_NOTHROW(p.validate());
    p.grid_points = 8;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.r_min = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.system = System::So13;
    p.r_max = 1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    CHECK_THROWS_AS(parse_system("so5"), std::invalid_argument);
    CHECK(parse_system("scale") == System::Scale);
}

TEST_CASE("terminating hypergeometric coefficients")
{
    auto c = hypergeometric_polynomial(mpq_class(-2), mpq_class(1, 2), mpq_class(3, 2));
    REQUIRE(c.size() == 3);
    CHECK(c[0] == 1);
    CHECK(c[1] == mpq_class(-2, 3));
    CHECK(c[2] == mpq_class(1, 5));
    CHECK_THROWS_AS(hypergeometric_polynomial(mpq_class(1, 2), mpq_class(1), mpq_class(1)), std::domain_error);
}

TEST_CASE("Gauss function against reference values")
{
    for (const auto& r : kHyp)
        CHECK(hyp2f1(r.a, r.b, r.c, r.z) == doctest::Approx(r.value).epsilon(1e-12));
    // F(1, 1; 2; z) = -ln(1 - z) / z
    for (double z : {-0.8, 0.3, 0.75, 0.95})
        CHECK(hyp2f1(1, 1, 2, z) == doctest::Approx(-std::log1p(-z) / z).epsilon(1e-12));
    // F(1/2, 1; 3/2; z^2) = atanh(z) / z
    for (double z : {0.2, 0.8, 0.99})
        CHECK(hyp2f1(0.5, 1, 1.5, z * z) == doctest::Approx(std::atanh(z) / z).epsilon(1e-11));
}

TEST_CASE("closed forms against reference values")
{
    CHECK(evaluate(ClosedFormSolution::soll1(0.3, 0), 0.8) == doctest::Approx(1.96652803744441).epsilon(1e-12));
    CHECK(evaluate(ClosedFormSolution::soll(3, 2), 1.3) == doctest::Approx(0.0688172124588038).epsilon(1e-12));
    CHECK(evaluate(ClosedFormSolution::soso(1, -2, 1.5), 0.7) == doctest::Approx(0.179398973197155).epsilon(1e-12));
    // k = 0: phi = atanh(r) / sqrt(1 - r^2)
    for (double r : {0.1, 0.5, 0.9})
        CHECK(evaluate(ClosedFormSolution::soll1(0, 0), r) == doctest::Approx(std::atanh(r) / std::sqrt(1 - r * r)));
    // n = 1, l = 0: phi = r (1 + r^2)^(-3/2)
    for (double r : {0.1, 1.0, 4.0})
        CHECK(evaluate(ClosedFormSolution::soll(1, 0), r) == doctest::Approx(r * std::pow(1 + r * r, -1.5)));
}

TEST_CASE("closed-form residuals")
{
    for (auto [n, l] : {std::pair{1, 0}, {2, 0}, {2, 1}, {3, 2}, {4, 1}}) {
        auto s = ClosedFormSolution::soll(n, l);
        auto smp = default_samples(s);
        CHECK(smp.size() >= 20);
        CHECK(closed_form_residual(s, smp) < 1e-8);
    }
    for (double k : {0.3, 0.7}) {
        for (int l : {0, 1}) {
            auto s = ClosedFormSolution::soll1(k, l, l ? 0.5 : 0.0);
            CHECK(closed_form_residual(s, default_samples(s)) < 1e-8);
        }
    }
    auto a = ClosedFormSolution::soso(0, 1, 2);
    CHECK(closed_form_residual(a, default_samples(a)) < 1e-8);
    auto b = ClosedFormSolution::soso(1, -2, 1.5);
    CHECK(b.bessel_index() == doctest::Approx(2));
    CHECK(closed_form_residual(b, default_samples(b)) < 1e-8);
    CHECK(soso_printed_index_residual(b, default_samples(b)) > 1e-3);
    CHECK_THROWS_AS(ClosedFormSolution::soso(0, 2, 1), std::domain_error);
    CHECK_THROWS_AS(ClosedFormSolution::soll(2, 2), std::domain_error);
}

TEST_CASE("symbolic closed form is an exact eigenfunction")
{
    using namespace pdm::sym;
    auto phi = soll_expr(2, 1);
    for (double r : {0.3, 1.7})
        CHECK(eval(phi, {r, 0, 0}) == doctest::Approx(evaluate(ClosedFormSolution::soll(2, 1), r)));
}

TEST_CASE("finite-difference eigenpairs satisfy the assembled matrix")
{
    RadialProblem p;
    p.l = 1;
    p.r_max = 20;
    p.grid_points = 600;
    auto vals = fd_eigenvalues(p, 3);
    REQUIRE(vals.size() == 3);
    CHECK(std::is_sorted(vals.begin(), vals.end()));
    Dense m = assemble_reference(1, p.r_min, p.r_max, p.grid_points);
    double scale = *std::max_element(m.d.begin(), m.d.end());
    for (std::size_t k = 0; k < vals.size(); ++k) {
        double lam = vals[k];
        auto v = fd_eigenvector(p, lam);
        REQUIRE(v.size() == m.d.size());
        double res = 0, nrm = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            double y = m.d[i] * v[i] - lam * v[i];
            if (i > 0)
                y += m.e[i - 1] * v[i - 1];
            if (i + 1 < v.size())
                y += m.e[i] * v[i + 1];
            res += y * y;
            nrm += v[i] * v[i];
        }
        CHECK(std::sqrt(res / nrm) < 1e-10 * scale);
        CHECK(fd_count_below(p, lam - 1e-6) == int(k));
        CHECK(fd_count_below(p, lam + 1e-6) == int(k) + 1);
    }
}

TEST_CASE("so4 l = 1 eigenvalues and grid convergence")
{
    RadialProblem p;
    p.l = 1;
    auto st = fd_study(p, 2);
    CHECK(st.coarse[0] == doctest::Approx(17).epsilon(5e-3));
    CHECK(st.coarse[1] == doctest::Approx(37).epsilon(5e-3));
    CHECK(st.richardson[0] == doctest::Approx(17).epsilon(1e-3));
    CHECK(st.warnings.empty());
    RadialProblem q = p;
    q.grid_points = 2 * (2 * p.grid_points - 1) - 1;
    double finer = fd_eigenvalues(q, 1)[0];
    double ratio = (st.coarse[0] - st.fine[0]) / (st.fine[0] - finer);
    CHECK(ratio == doctest::Approx(4).epsilon(0.1));
    RadialProblem l2 = p;
    l2.l = 2;
    CHECK(fd_eigenvalues(l2, 1)[0] == doctest::Approx(37).epsilon(5e-3));
}

TEST_CASE("so4 l = 0 with Dirichlet ends is limited by the outer cut")
{
    // At infinity the l = 0 solutions go like r^-1 and r^-2, so phi(r_max) = 0
    // shifts the levels by O(1/r_max).
    RadialProblem p;
    auto d30 = fd_eigenvalues(p, 1)[0];
    p.r_max = 100;
    p.grid_points = 20000;
    auto d100 = fd_eigenvalues(p, 1)[0];
    CHECK(d30 > 5.1);
    CHECK(d100 < d30);
    CHECK((d30 - 5) / (d100 - 5) == doctest::Approx(100.0 / 30).epsilon(0.15));
    RadialProblem a;
    a.outer = RadialProblem::Outer::Asymptotic;
    auto v = fd_eigenvalues(a, 3);
    for (int n = 1; n <= 3; ++n)
        CHECK(v[n - 1] == doctest::Approx(so4_lambda(n)).epsilon(5e-3));
}

TEST_CASE("grid warning")
{
    RadialProblem p;
    p.grid_points = 40;
    auto st = fd_study(p, 3);
    CHECK_FALSE(st.warnings.empty());
}

TEST_CASE("normalization integrals")
{
    auto n = normalization_integral(ClosedFormSolution::soll(1, 0));
    CHECK(n.finite);
    CHECK(n.value == doctest::Approx(M_PI / 16).epsilon(1e-9));
    CHECK(n.tail_exponent == -4);
    for (double k : {0.0, 0.25, 0.45}) {
        auto m = normalization_integral(ClosedFormSolution::soll1(k, 0));
        CHECK(m.finite);
        CHECK(m.value < 0);
        CHECK(m.abs_value == doctest::Approx(-m.value));
        CHECK(m.tail_exponent > 0);
        CHECK(std::abs(m.integrand_at_1) < 1e-3);
    }
    // k = 0: integral of -atanh(r)^2 (1 - r^2)^2 over (0, 1), mpmath quad
    auto z = normalization_integral(ClosedFormSolution::soll1(0, 0));
    CHECK(z.value == doctest::Approx(-0.105315751159527).epsilon(1e-10));
    auto big = normalization_integral(ClosedFormSolution::soll1(1.2, 0));
    CHECK(big.tail_exponent < 0);
    CHECK_THROWS_AS(normalization_integral(ClosedFormSolution::soso(0, 1, 2)), std::invalid_argument);
}

TEST_CASE("so13 drift toward the singular point")
{
    auto d = so13_drift(0, {0.2, 0.1, 0.05, 0.025});
    CHECK(d.monotone);
    CHECK(d.lowest.back() < d.lowest.front());
}

TEST_CASE("csv and dumps")
{
    RadialProblem p;
    p.l = 1;
    auto csv = eigen_csv(p, {17.0, 37.37}, 2);
    CHECK(csv.rfind("system,l_or_kappa,index,lambda_fd,lambda_exact,rel_err\n", 0) == 0);
    CHECK(csv.find("so4,1,0,17,17,0\n") != std::string::npos);
    CHECK(csv.find("so4,1,1,37.37,37,0.01\n") != std::string::npos);
    auto dump = eigenfunction_dump(ClosedFormSolution::soll(1, 0), 0.5, 1.5, 3);
    CHECK(std::count(dump.begin(), dump.end(), '\n') == 3);
}

TEST_CASE("suite report")
{
    auto r = verify_spectral();
    int fails = 0;
    for (const auto& c : r.checks)
        if (c.status == "fail") {
            ++fails;
            CHECK(c.check.find("Dirichlet ends") != std::string::npos);
        }
    CHECK(fails == 6);
}
