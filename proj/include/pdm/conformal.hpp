#pragma once

#include "pdm/diffop.hpp"
#include "pdm/report.hpp"

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pdm::conf {

using ops::FirstOrderOp;
using sym::Expr;

struct GeneratorId {
    enum class Kind { P, J, D, K, M };
    Kind kind = Kind::D;
    int i = 0;   // P, J, K: 1..3
    int mu = 0;  // M
    int nu = 0;

    static GeneratorId P(int a) { return {Kind::P, a, 0, 0}; }
    static GeneratorId J(int a) { return {Kind::J, a, 0, 0}; }
    static GeneratorId D() { return {Kind::D, 0, 0, 0}; }
    static GeneratorId K(int a) { return {Kind::K, a, 0, 0}; }
    static GeneratorId M(int m, int n);

    // "P1", "J3", "D", "K2", "M43".
    static GeneratorId parse(const std::string& s);
    std::string name() const;
    // M(nu, mu) -> (-1, M(mu, nu)) for mu < nu; other kinds unchanged.
    std::pair<int, GeneratorId> canonical() const;
};

// Linear combination of generators with symbolic coefficients.
using Combo = std::vector<std::pair<Expr, GeneratorId>>;
std::string combo_name(const Combo& c);
// [["1", "M43"], ["-1", "M03"]]
Combo combo_from_json(const nlohmann::json& j);

ops::KillingParams zero_killing();
ops::KillingParams killing_params(const GeneratorId& id);
ops::KillingParams killing_params(const Combo& c);
FirstOrderOp generator(const GeneratorId& id);
FirstOrderOp generator(const Combo& c);

struct DecompositionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reads (lambda, mu, omega, nu, c0) back from an operator in the c(3) span.
ops::KillingParams read_killing(const FirstOrderOp& q);

// Coordinates over M01 M02 M03 M04 M12 M13 M14 M23 M24 M34 and the identity.
constexpr int kCoords = 11;
using Coords = std::array<Expr, kCoords>;
const std::array<std::string, kCoords>& coord_names();
Coords coords_of(const ops::KillingParams& p);
Coords decompose(const FirstOrderOp& q);

// A named operator basis and its expected bracket table:
// table(i, j) gives coefficients of [b_i, b_j] over the basis.
struct Basis {
    std::string name;
    std::vector<std::string> labels;
    std::vector<FirstOrderOp> ops;
};
using BracketTable = std::function<std::vector<Expr>(int, int)>;

Basis c3_basis();
Basis so14_basis();
Basis so4_realization();   // M12 M13 M23 M41 M42 M43 written out as differential operators
Basis so13_realization();  // M01 M02 M03 M12 M13 M23
// printed = false flips the sign of the delta D term in [K^a, P^b].
BracketTable c3_table(bool printed = true);
BracketTable so14_table();
BracketTable so4_table();
BracketTable so13_table();

report::VerificationReport verify_structure(const Basis& b, const BracketTable& t);
// Triples whose Jacobi sum computed from the table alone is nonzero.
std::vector<std::string> table_jacobi_violations(const Basis& b, const BracketTable& t);
// "c3", "so14", "so4", "so13".
report::VerificationReport verify_algebra(const std::string& tag);

struct SubalgebraSpec {
    std::string id;
    int dimension = 0;  // as printed
    std::vector<Combo> basis;
    std::vector<std::string> params;
    std::string note;
    bool flagged = false;  // printed record known to be irregular; failures are annotations
};

// Rank of a list of coordinate vectors over the rational functions in the parameters.
int rank(const std::vector<Coords>& vs);
// Coefficients c with sum c_k v_k = w, if w lies in the span.
std::optional<std::vector<Expr>> solve_in_span(const std::vector<Coords>& vs, const Coords& w);

report::VerificationReport subalgebra_closure(const SubalgebraSpec& s);
const std::vector<SubalgebraSpec>& subalgebras();

// Printed generator rows (xi, eta, parameters) against generator(); deltas become annotations.
report::VerificationReport compare_generator_rows();

}  // namespace pdm::conf
