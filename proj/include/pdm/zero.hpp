#pragma once

#include "pdm/expr.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

namespace pdm::sym {

using Point = std::array<double, 3>;

struct EvalError : std::runtime_error {
    EvalError(const std::string& what, std::string sub)
        : std::runtime_error(what + " in " + sub), subtree(std::move(sub))
    {
    }
    std::string subtree;
};

struct ZeroTestPolicy {
    int points = 50;
    double tol = 1e-9;
    double coord_min = 0.1;
    double coord_max = 2.0;
    double param_min = 0.3;
    double param_max = 1.7;
    double unit_sphere_gap = 0.01;  // reject |r^2 - 1| below this
    std::uint64_t seed = 0x5eed2009ULL;
};

struct ZeroStatus {
    enum Kind { ProvedZero, NumericZero, NonZero, Inconclusive } kind = Inconclusive;
    int points = 0;
    double max_residual = 0.0;
    Point witness{};
    std::map<std::string, double> witness_params;
    std::complex<double> value{};
    std::string reason;

    bool is_zero() const { return kind == ProvedZero || kind == NumericZero; }
    const char* name() const;
    const char* tier() const;  // "symbolic", "numeric" or "none"
};

ZeroStatus is_zero(const Expr& e, const ZeroTestPolicy& policy = {});
ZeroStatus numeric_zero_test(const Expr& e, const ZeroTestPolicy& policy = {});

// Applications are looked up first by their printed form, then by canonical key.
double eval(const Expr& e, const Point& p, const std::map<std::string, double>& params = {},
            const std::map<std::string, double>& abstract_values = {});
std::complex<double> eval_complex(const Expr& e, const Point& p,
                                  const std::map<std::string, double>& params = {},
                                  const std::map<std::string, double>& abstract_values = {});

// Canonical key of an abstract application (arguments normalized).
std::string application_key(const Expr& apply_node);

// Deterministic 64-bit generator (splitmix64).
class SplitMix {
public:
    explicit SplitMix(std::uint64_t s) : s_(s) {}
    std::uint64_t next()
    {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t s_;
};

}  // namespace pdm::sym
