#pragma once

#include "pdm/algebra.hpp"
#include "pdm/zero.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pdm::ops {

using sym::Expr;

// Q = -i (xi^a d_a + eta)
struct FirstOrderOp {
    std::array<Expr, 3> xi;
    Expr eta;
};

// A^{ab} d_a d_b + B^a d_a + C with A symmetric.
class SecondOrderOp {
public:
    SecondOrderOp() = default;
    const Expr& A(int a, int b) const { return a_[index(a, b)]; }
    void set_A(int a, int b, Expr e) { a_[index(a, b)] = std::move(e); }
    std::array<Expr, 3> B;
    Expr C;

    // Ten coefficient slots: A11 A22 A33 A12 A13 A23 B1 B2 B3 C.
    std::vector<Expr> slots() const;
    static const std::vector<std::string>& slot_names();

private:
    static int index(int a, int b);
    std::array<Expr, 6> a_;
};

struct PDMHamiltonian {
    Expr f;
    Expr V;
};

struct KillingParams {
    std::array<Expr, 3> lambda;
    std::array<Expr, 3> mu_rot;
    Expr omega;
    std::array<Expr, 3> nu;
    Expr c0;

    KillingParams& operator+=(const KillingParams& o);
    KillingParams scaled(const Expr& k) const;
};

// General linear operator sum_alpha c_alpha d^alpha.
class DiffOp {
public:
    using Index = std::array<int, 3>;
    std::map<Index, Expr> terms;

    static DiffOp from(const FirstOrderOp& q);
    static DiffOp from(const SecondOrderOp& s);
    int order() const;
    DiffOp operator*(const DiffOp& o) const;  // composition
    DiffOp operator+(const DiffOp& o) const;
    DiffOp operator-(const DiffOp& o) const;
    DiffOp scaled(const Expr& k) const;
    DiffOp simplified() const;
    // Coefficients above order 2 must vanish identically.
    SecondOrderOp to_second_order() const;
};

DiffOp commutator(const DiffOp& a, const DiffOp& b);

FirstOrderOp killing_to_op(const KillingParams& p);
SecondOrderOp hamiltonian_to_op(const PDMHamiltonian& h);
SecondOrderOp commute_hq(const PDMHamiltonian& h, const FirstOrderOp& q);
FirstOrderOp commute_qq(const FirstOrderOp& q1, const FirstOrderOp& q2);
SecondOrderOp compose_first_order(const FirstOrderOp& q1, const FirstOrderOp& q2);
SecondOrderOp as_second_order(const FirstOrderOp& q);

SecondOrderOp operator+(const SecondOrderOp& a, const SecondOrderOp& b);
SecondOrderOp operator-(const SecondOrderOp& a, const SecondOrderOp& b);
SecondOrderOp scale(const SecondOrderOp& a, const Expr& k);
SecondOrderOp simplify(const SecondOrderOp& a);
FirstOrderOp operator+(const FirstOrderOp& a, const FirstOrderOp& b);
FirstOrderOp operator-(const FirstOrderOp& a, const FirstOrderOp& b);
FirstOrderOp scale(const FirstOrderOp& a, const Expr& k);
FirstOrderOp simplify(const FirstOrderOp& a);

// eta~ in Q = (xi.p + p.xi)/2 + eta~, i.e. eta~ = -i (eta - div(xi)/2).
Expr eta_tilde(const FirstOrderOp& q);

// Residuals xi^i f_i - 2(omega - 2 lambda.x) f and xi^i V_i + 3 lambda^i f_i.
std::pair<Expr, Expr> reduced_determining(const PDMHamiltonian& h, const KillingParams& p);

// Abstract f, V, xi^a, eta of x1, x2, x3.
PDMHamiltonian abstract_hamiltonian();
FirstOrderOp abstract_integral();

struct DeterminingEquation {
    std::string label;   // e.g. "second-order(1,2)"
    Expr residual;       // coefficient of [H,Q]
    Expr reference;      // textbook form of the equation
    Scalar factor;       // residual = factor * reference
    bool matched = false;
};

// The ten coefficient residuals of [H,Q] for abstract h, q, each matched to its
// reference form up to a constant factor.
std::vector<DeterminingEquation> extract_determining(const PDMHamiltonian& h, const FirstOrderOp& q);

// Matches residual = k * reference for a constant k found from one monomial.
bool match_up_to_factor(const Expr& residual, const Expr& reference, Scalar& k);

std::string to_text(const FirstOrderOp& q);
std::string to_text(const SecondOrderOp& s);

}  // namespace pdm::ops
