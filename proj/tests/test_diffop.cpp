#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdm/diffop.hpp"

using namespace pdm;
using namespace pdm::sym;
using namespace pdm::ops;

namespace {

Expr psi() { return apply("psi", {}, {x(1), x(2), x(3)}); }

// Direct action on a test function, straight from the definitions.
Expr act(const FirstOrderOp& q, const Expr& u)
{
    Expr s = q.eta * u;
    for (int a = 1; a <= 3; ++a)
        s = s + q.xi[a - 1] * diff(u, a);
    return -imag_unit() * s;
}

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

Expr act_h(const PDMHamiltonian& h, const Expr& u)
{
    Expr out = -h.V * u;
    for (int a = 1; a <= 3; ++a)
        out = out - diff(h.f * diff(u, a), a);
    return out;
}

FirstOrderOp sample_q()
{
    return {{parse("(+ (* 2 x1 x2) x3)"), parse("(- (^ x3 2) x1)"), parse("(* alpha x2)")}, parse("(+ x1 (* 3 x2 x3))")};
}

}  // namespace

TEST_CASE("Hamiltonian operator acts as -d f d - V")
{
    PDMHamiltonian h{parse("(+ 1 (* mu $r2))"), parse("(/ nu (+ 1 (^ x1 2)))")};
    Expr u = psi();
    CHECK(proved_zero(act(hamiltonian_to_op(h), u) - act_h(h, u)));
}

TEST_CASE("[H, Q] agrees with direct composition on a test function")
{
    PDMHamiltonian h{parse("(+ 1 (^ x1 2) (* x2 x3))"), parse("(* x1 (^ x3 3))")};
    FirstOrderOp q = sample_q();
    Expr u = psi();
    Expr direct = act_h(h, act(q, u)) - act(q, act_h(h, u));
    CHECK(proved_zero(act(commute_hq(h, q), u) - direct));
}

TEST_CASE("[Q1, Q2] and Q1 Q2 agree with direct composition")
{
    FirstOrderOp q1 = sample_q();
    FirstOrderOp q2{{parse("x2"), parse("(- x1)"), Expr(0L)}, parse("(^ x3 2)")};
    Expr u = psi();
    CHECK(proved_zero(act(commute_qq(q1, q2), u) - (act(q1, act(q2, u)) - act(q2, act(q1, u)))));
    CHECK(proved_zero(act(compose_first_order(q1, q2), u) - act(q1, act(q2, u))));
}

TEST_CASE("canonical commutator [p1, x1] = -i")
{
    DiffOp p1 = DiffOp::from(FirstOrderOp{{Expr(1L), Expr(0L), Expr(0L)}, Expr(0L)});
    DiffOp x1op = DiffOp::from(FirstOrderOp{{Expr(0L), Expr(0L), Expr(0L)}, imag_unit() * x(1)});
    DiffOp c = commutator(p1, x1op).simplified();
    CHECK(c.order() == 0);
    CHECK(proved_zero(c.terms.at({0, 0, 0}) + imag_unit()));
}

TEST_CASE("free particle symmetries")
{
    PDMHamiltonian free{Expr(1L), Expr(0L)};
    auto zero_op = [](const SecondOrderOp& s) {
        for (const auto& e : s.slots())
            if (!proved_zero(e))
                return false;
        return true;
    };
    FirstOrderOp p1{{Expr(1L), Expr(0L), Expr(0L)}, Expr(0L)};
    FirstOrderOp j3{{-x(2), x(1), Expr(0L)}, Expr(0L)};
    FirstOrderOp d{{x(1), x(2), x(3)}, rational(3, 2)};
    CHECK(zero_op(commute_hq(free, p1)));
    CHECK(zero_op(commute_hq(free, j3)));
    CHECK_FALSE(zero_op(commute_hq(free, d)));
}

TEST_CASE("determining equations match their reference forms")
{
    auto eqs = extract_determining(abstract_hamiltonian(), abstract_integral());
    CHECK(eqs.size() == 10);
    for (const auto& e : eqs) {
        CAPTURE(e.label);
        CHECK(e.matched);
        CHECK_FALSE(e.factor.is_zero());
    }
}

TEST_CASE("reduced determining equations vanish for a known integral")
{
    // f = r^2, V = 0 is invariant under rotations and dilatations.
    PDMHamiltonian h{r2(), Expr(0L)};
    KillingParams p;
    p.lambda = {Expr(0L), Expr(0L), Expr(0L)};
    p.mu_rot = {Expr(0L), Expr(0L), Expr(1L)};
    p.omega = Expr(1L);
    p.nu = {Expr(0L), Expr(0L), Expr(0L)};
    p.c0 = Expr(0L);
    auto [r1, r2v] = reduced_determining(h, p);
    CHECK(proved_zero(r1));
    CHECK(proved_zero(r2v));
    p.nu = {Expr(1L), Expr(0L), Expr(0L)};
    auto [s1, s2] = reduced_determining(h, p);
    CHECK_FALSE(proved_zero(s1));
    (void)s2;
}

TEST_CASE("eta tilde of the dilatation generator")
{
    // Q = -i(x.d + 3/2) is the symmetrized x.p, so eta~ vanishes.
    FirstOrderOp d{{x(1), x(2), x(3)}, rational(3, 2)};
    CHECK(proved_zero(eta_tilde(d)));
}
