#pragma once

#include "pdm/diffop.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

namespace pdm::conf {

using Matrix3 = std::array<std::array<sym::Expr, 3>, 3>;

// Old coordinates as functions of new ones, x = T(y):
//   shift       x = y + nu
//   rotation    x = R y
//   dilatation  x = k y   (k = e^lambda, rational)
//   inversion   x = y / |y|^2, wavefunction multiplier |y|^w
struct TransformSpec {
    enum class Kind { Shift, Rotation, Dilatation, Inversion };
    Kind kind = Kind::Shift;
    std::array<sym::Expr, 3> nu{sym::Expr(0L), sym::Expr(0L), sym::Expr(0L)};
    Matrix3 R{};
    sym::Expr k = sym::Expr(1L);
    std::optional<int> weight;  // inversion only; searched over -3..3 when empty

    static TransformSpec shift(std::array<sym::Expr, 3> nu);
    // Throws std::invalid_argument unless R^T R = 1 exactly.
    static TransformSpec rotation(const Matrix3& R);
    // Rational rotation (1 - A)^{-1}(1 + A) with A skew built from (a, b, c).
    static TransformSpec rotation_cayley(const Scalar& a, const Scalar& b, const Scalar& c);
    static TransformSpec dilatation(const Scalar& k);
    static TransformSpec inversion(std::optional<int> weight = std::nullopt);
    std::string name() const;
};

struct FormError : std::runtime_error {
    FormError(const std::string& what, std::string obs)
        : std::runtime_error(what), obstruction(std::move(obs))
    {
    }
    std::string obstruction;
};

struct TransformResult {
    ops::PDMHamiltonian h;
    int weight = 0;
};

// W L W^{-1} written in the new coordinates.
ops::DiffOp change_coordinates(const TransformSpec& t, const ops::DiffOp& L, int weight);

TransformResult transform_hamiltonian(const TransformSpec& t, const ops::PDMHamiltonian& h);
ops::PDMHamiltonian apply_transform(const TransformSpec& t, const ops::PDMHamiltonian& h);
ops::FirstOrderOp transform_op(const TransformSpec& t, const ops::FirstOrderOp& q, int weight);

}  // namespace pdm::conf
