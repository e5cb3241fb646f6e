#pragma once

#include "pdm/scalar.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdm::sym {

enum class Kind { Num, Var, Param, Add, Mul, Pow, Fn, Apply };
enum class FnKind { Exp, Ln, Atan, Sin, Cos };

class Expr;
struct Node;

// Immutable expression handle. Copies share the node.
class Expr {
public:
    Expr();
    Expr(long v);
    Expr(int v) : Expr(long(v)) {}
    Expr(const Scalar& s);
    explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

    const Node& node() const { return *n_; }
    const Node* get() const { return n_.get(); }
    Kind kind() const;
    std::uint64_t hash() const;

    bool is_num() const { return kind() == Kind::Num; }
    bool is_zero() const;
    bool is_one() const;
    const Scalar& num() const;

    std::string str() const;

private:
    std::shared_ptr<const Node> n_;
};

struct Node {
    Kind kind;
    Scalar value;                  // Num
    int var = 0;                   // Var: 1..3
    std::string name;              // Param, Apply
    FnKind fn = FnKind::Exp;       // Fn
    mpq_class exponent;            // Pow
    std::vector<int> slots;        // Apply: sorted derivative multiset, 1-based
    std::vector<Expr> args;        // children
    std::uint64_t hash = 0;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Expr num(const Scalar& s);
Expr rational(long n, long d);
Expr imag_unit();
Expr var(int axis);
Expr param(const std::string& name);
Expr add(std::vector<Expr> terms);
Expr mul(std::vector<Expr> factors);
Expr pow(const Expr& base, const mpq_class& exponent);
Expr pow(const Expr& base, long exponent);
Expr sqrt(const Expr& e);
Expr fn(FnKind k, const Expr& arg);
Expr exp(const Expr& e);
Expr ln(const Expr& e);
Expr atan(const Expr& e);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr apply(const std::string& name, std::vector<int> slots, std::vector<Expr> args);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);

bool structurally_equal(const Expr& a, const Expr& b);
int compare(const Expr& a, const Expr& b);  // total order on structure

std::string to_string(const Expr& e);
const char* fn_name(FnKind k);

// Named shorthands available in the text grammar as $name.
using Defs = std::map<std::string, Expr>;
const Defs& builtin_defs();
Expr parse(const std::string& text, const Defs& extra = {});

Expr diff(const Expr& e, int axis);
Expr diff_param(const Expr& e, const std::string& name);
Expr gradient_dot(const std::array<Expr, 3>& v, const Expr& e);

Expr substitute_vars(const Expr& e, const std::array<Expr, 3>& images);
Expr substitute_params(const Expr& e, const std::map<std::string, Expr>& images);

// Concrete realization of an abstract function: body over parameters named args[k].
struct FunctionDef {
    std::vector<std::string> args;
    Expr body;
};
Expr substitute_function(const Expr& e, const std::string& name, const FunctionDef& def);

std::set<std::string> free_params(const Expr& e);
std::set<std::string> function_names(const Expr& e);
bool has_abstract(const Expr& e);
bool has_transcendental(const Expr& e);
bool has_vars(const Expr& e);
std::size_t tree_size(const Expr& e);

// Common geometric quantities.
Expr r2();
Expr rt2();
Expr x(int a);

}  // namespace pdm::sym
