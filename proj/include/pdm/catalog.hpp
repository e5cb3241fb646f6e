#pragma once

#include "pdm/conformal.hpp"
#include "pdm/diffop.hpp"
#include "pdm/report.hpp"

#include <map>
#include <string>
#include <vector>

namespace pdm::catalog {

using sym::Expr;

struct Encoding {
    std::string label;  // "verbatim" or the variant label
    Expr f;
    Expr V;
    std::vector<conf::Combo> integrals;
    std::string reason;
};

struct CatalogEntry {
    int id = 0;
    Expr f;
    Expr V;
    std::vector<std::string> params;
    std::map<std::string, int> functions;  // abstract function -> arity
    std::vector<conf::Combo> integrals;
    std::string notes;
    bool rational = false;  // free of abstract functions and transcendentals
    std::vector<Encoding> variants;

    Encoding verbatim() const { return {"verbatim", f, V, integrals, {}}; }
    ops::PDMHamiltonian hamiltonian() const { return {f, V}; }
};

constexpr int kEntries = 18;

const CatalogEntry& entry(int id);  // throws std::out_of_range
const std::vector<CatalogEntry>& entries();

// Concrete rational bodies substituted for F and Ft, k = 0, 1, 2.
std::vector<std::pair<std::string, sym::FunctionDef>> instantiation(const CatalogEntry& e, int k);

report::VerificationReport verify_encoding(const CatalogEntry& e, const Encoding& enc,
                                           const sym::ZeroTestPolicy& policy);
// Verbatim row first; a failing verbatim row is downgraded to annotations only when a
// variant passes in full.
report::VerificationReport verify_entry(int id, const sym::ZeroTestPolicy& policy = {});
std::vector<report::VerificationReport> verify_all(const sym::ZeroTestPolicy& policy = {}, int jobs = 1);

// "de7_family", "ff_family", "de13_family", "fV1".
report::VerificationReport verify_worked_family(const std::string& name,
                                                const sym::ZeroTestPolicy& policy = {});
const std::vector<std::string>& worked_families();

// Residual pair of 2x_k(x1 g_1 + x2 g_2 + (x3 - t) g_3) - (r^2 + s - 2t x3) g_k - rhs with
// t = 1 when shifted, else 0; rhs = 4 x_k f for g = f and 3 f_k for g = V.
std::pair<Expr, Expr> flow_residual(const ops::PDMHamiltonian& h, int k, long s, bool shifted);

}  // namespace pdm::catalog
