#pragma once

#include "pdm/expr.hpp"
#include "pdm/report.hpp"

#include <functional>
#include <string>
#include <vector>

namespace pdm::spectral {

enum class System { So4, So13, Scale };

System parse_system(const std::string& s);  // "so4", "so13", "scale"
const char* system_name(System s);

struct RadialProblem {
    System system = System::So4;
    int l = 0;             // l for so4/so13, kappa for scale
    double omega = 0.0;    // scale only
    double r_min = 1e-3;
    double r_max = 30.0;
    int grid_points = 4000;  // nodes including both ends
    // Outer end: phi(r_max) = 0, or phi matched to the decaying power r^-(l+2).
    enum class Outer { Dirichlet, Asymptotic };
    Outer outer = Outer::Dirichlet;

    void validate() const;  // throws std::invalid_argument
};

// -(p phi')' + q phi = lambda w phi
struct SturmLiouville {
    std::function<double(double)> p, q, w;
    sym::Expr p_expr, q_expr;  // in x1 = r
};

SturmLiouville sturm_liouville_form(const RadialProblem& p);  // throws for scale
// Exact check that -(p phi')' + q phi expands to the printed radial operator.
bool sturm_liouville_matches(System s, int l);

// Lowest `count` eigenvalues, ascending, of the symmetric three-point discretization.
std::vector<double> fd_eigenvalues(const RadialProblem& p, int count);
// Number of discrete eigenvalues below x.
int fd_count_below(const RadialProblem& p, double x);
// Eigenvector on the interior nodes for the eigenvalue closest to `lambda`.
std::vector<double> fd_eigenvector(const RadialProblem& p, double lambda);
std::vector<double> fd_nodes(const RadialProblem& p);  // interior nodes

struct FdStudy {
    std::vector<double> coarse;      // N nodes
    std::vector<double> fine;        // 2N - 1 nodes
    std::vector<double> richardson;  // (4 fine - coarse) / 3
    std::vector<std::string> warnings;
};

FdStudy fd_study(const RadialProblem& p, int count, double tol = 5e-3);

// Lambda = 4n^2 + 1 of the so4 radial problem.
double so4_lambda(int n);

struct ClosedFormSolution {
    enum class Formula { Soll, Soll1, Soso };
    Formula formula = Formula::Soll;
    int n = 1;          // soll
    int l = 0;          // soll, soll1; kappa for soso
    double k = 0.5;     // soll1
    double etilde = 1;  // soso
    double omega = 1;   // soso
    double c = 1.0;     // coefficient of the regular part
    double c_tilde = 0.0;  // soll1 coefficient of the r^-l part

    static ClosedFormSolution soll(int n, int l);
    static ClosedFormSolution soll1(double k, int l, double c_tilde = 0.0);
    static ClosedFormSolution soso(int kappa, double etilde, double omega);

    double lambda() const;  // right-hand side of the radial equation
    double bessel_index() const;  // sqrt(kappa^2 + 1 - E), throws when negative under the root
    std::string name() const;
};

// Terminating series F([a, b], [c], z) with a a nonpositive integer, exact coefficients.
std::vector<mpq_class> hypergeometric_polynomial(const mpq_class& a, const mpq_class& b, const mpq_class& c);
// Gauss series with the 1 - z connection for z > 1/2.
double hyp2f1(double a, double b, double c, double z);

double evaluate(const ClosedFormSolution& s, double r);
// Symbolic phi(r) in x1 for soll.
sym::Expr soll_expr(int n, int l);

// max |L phi - lambda phi| / max(1, |lambda phi|)
double closed_form_residual(const ClosedFormSolution& s, const std::vector<double>& samples);
// Residual for soso with the printed index kappa^2 + 1 - E in place of its square root.
double soso_printed_index_residual(const ClosedFormSolution& s, const std::vector<double>& samples);
std::vector<double> default_samples(const ClosedFormSolution& s, int count = 24);

struct Normalization {
    double value = 0;        // signed
    double abs_value = 0;    // integral of the absolute integrand
    double error = 0;
    bool finite = false;
    double tail_exponent = 0;    // integrand ~ r^e (soll) or (1 - r)^e (soll1)
    double integrand_at_0 = 0;   // soll1 boundary samples
    double integrand_at_1 = 0;
    std::string verdict;
};

Normalization normalization_integral(const ClosedFormSolution& s);

struct DriftProbe {
    std::vector<double> deltas;
    std::vector<double> lowest;
    bool monotone = false;
};

// Lowest Dirichlet eigenvalue of the so13 problem on [r_min, 1 - delta].
DriftProbe so13_drift(int l, const std::vector<double>& deltas, int grid_points = 2000);

// system,l_or_kappa,index,lambda_fd,lambda_exact,rel_err
std::string eigen_csv(const RadialProblem& p, const std::vector<double>& fd, int first_n);
// Two-column r,phi dump.
std::string eigenfunction_dump(const ClosedFormSolution& s, double r0, double r1, int points);

report::VerificationReport verify_spectral();

}  // namespace pdm::spectral
