#pragma once

#include "pdm/expr.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pdm::sym {

using AtomId = std::uint32_t;

enum class AtomKind { Var, Param, Fn, Apply, Root, Opaque };

// Sparse monomial: (atom, exponent) pairs sorted by atom id.
struct Monomial {
    std::vector<std::pair<AtomId, std::uint32_t>> f;
    bool empty() const { return f.empty(); }
    std::uint32_t degree(AtomId a) const;
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.f == b.f; }
};

// Pure lex with lower atom id ranked higher.
struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

Monomial mono_mul(const Monomial& a, const Monomial& b);

class Poly {
public:
    using Terms = std::map<Monomial, Scalar, MonoLess>;

    Poly() = default;
    explicit Poly(const Scalar& c);
    static Poly atom(AtomId a, std::uint32_t e = 1);

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    Scalar constant() const;
    std::size_t size() const { return t_.size(); }

    void add_term(const Monomial& m, const Scalar& c);
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly operator*(const Poly& o) const;
    Poly operator*(const Scalar& c) const;
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    Poly pow(unsigned n) const;

    const Scalar& lead_coeff() const { return t_.rbegin()->second; }
    const Monomial& lead_mono() const { return t_.rbegin()->first; }
    std::uint32_t degree(AtomId a) const;
    bool contains(AtomId a) const { return degree(a) > 0; }
    std::vector<AtomId> atoms() const;
    // Coefficients in powers of atom a.
    std::map<std::uint32_t, Poly> coeffs(AtomId a) const;
    bool has_complex() const;

private:
    Terms t_;
};

// Root atoms t = base^(1/q) are reduced with t^q -> base after every product.
void reduce_roots(Poly& p);
bool has_roots(const Poly& p);

bool divides_exact(const Poly& a, const Poly& b, Poly& q);  // b | a, quotient in q
Poly poly_gcd(const Poly& a, const Poly& b);
Poly monic(const Poly& p);

struct RatFunc {
    Poly num;
    std::vector<std::pair<Poly, int>> den;  // factors without root atoms, monic
    bool is_zero() const { return num.is_zero(); }
};

RatFunc to_rat(const Expr& e);
Poly expand_den(const RatFunc& r);

struct AtomInfo {
    AtomKind kind;
    std::string key;
    Expr expr;       // canonical expression of the atom (root: base^(1/q))
    int var = 0;     // Var
    Poly base;       // Root
    unsigned q = 0;  // Root
};
AtomInfo atom_info(AtomId a);
std::size_t atom_count();

// Canonical form: reduced numerator/denominator, terms sorted by printed key.
Expr normalize(const Expr& e);
// Same representation without gcd cancellation.
Expr simplify(const Expr& e);
Expr poly_to_expr(const Poly& p);
// True when the numerator of the rational form vanishes identically.
bool proved_zero(const Expr& e);

}  // namespace pdm::sym
