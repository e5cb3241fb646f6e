#pragma once

#include "pdm/diffop.hpp"
#include "pdm/report.hpp"

#include <array>
#include <string>
#include <vector>

namespace pdm::casimir {

using ops::FirstOrderOp;
using ops::SecondOrderOp;
using sym::Expr;

// so4: M12 M13 M23 M41 M42 M43, boosts with (r^2 - 1).
// so13: M12 M13 M23 M01 M02 M03, boosts with (r^2 + 1).
struct Realization {
    std::string tag;
    std::vector<std::string> labels;
    std::vector<FirstOrderOp> ops;
    std::array<FirstOrderOp, 3> L;  // (1/2) eps_abc M^bc
    std::array<FirstOrderOp, 3> B;  // M^4a or M^0a
};

Realization realization(const std::string& tag);  // throws std::invalid_argument

struct CasimirPair {
    std::string tag;
    SecondOrderOp C1;
    SecondOrderOp C2;
};

CasimirPair build_casimirs(const std::string& tag);

// -(d_a f d_a + V) with f = (1 +- r^2)^2 and V = v_coeff r^2 + shift.
SecondOrderOp scaled_hamiltonian(const std::string& tag, long v_coeff = 6, long shift = 0);

// C1 = (1/4)(H -+ 9), C2 = 0 and the 6r^2 -> 5r^2 mutation control.
report::VerificationReport verify_casimir_identity(const std::string& tag);
// Centrality of C1 and, for so4, the q/g split into two so(3) copies.
report::VerificationReport verify_casimir_structure(const std::string& tag);

struct SpectrumLevel {
    int n = 0;
    long etilde = 0;       // 4n^2 + 5
    long e_mu_coeff = 0;   // E = mu * e_mu_coeff + nu
    long c1 = 0;           // n^2 - 1
    mpq_class q;           // (n - 1) / 2
    std::vector<int> allowed_l;
    Expr energy;           // mu (4n^2 + 5) + nu
};

SpectrumLevel algebraic_spectrum_so4(int n);  // throws std::domain_error for n < 1
// 4q(q + 1) = n^2 - 1 for n = 1..nmax.
report::VerificationReport spectrum_bridge(int nmax = 10);
// n,Etilde,E_mu_coeff,E_const
std::string spectrum_csv(int nmax);

struct EnergyWindow {
    double j1sq = 0;
    double etilde = 0;     // -5 - j1^2 as printed
    bool principal_window = false;   // -6 <= E <= -5
    bool subsidiary_window = false;  // -5 <= E
    double from_plus_quarter = 0;    // 4(1 - j1^2) - 9
    double from_minus_quarter = 0;   // -4(1 - j1^2) - 9
    std::vector<std::string> annotations;
};

EnergyWindow so13_energy_window(double j1sq);
// Side-by-side derivations of the so(1,3) energy formula as annotations.
report::VerificationReport so13_window_report();

}  // namespace pdm::casimir
