#include "pdm/transform.hpp"

#include "pdm/algebra.hpp"

namespace pdm::conf {

using namespace pdm::sym;
using ops::DiffOp;

TransformSpec TransformSpec::shift(std::array<Expr, 3> nu)
{
    TransformSpec t;
    t.kind = Kind::Shift;
    t.nu = std::move(nu);
    return t;
}

TransformSpec TransformSpec::rotation(const Matrix3& R)
{
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Expr s = add({R[0][i] * R[0][j], R[1][i] * R[1][j], R[2][i] * R[2][j]});
            if (!proved_zero(s - Expr(i == j ? 1L : 0L)))
                throw std::invalid_argument("rotation matrix is not orthogonal");
        }
    TransformSpec t;
    t.kind = Kind::Rotation;
    t.R = R;
    return t;
}

TransformSpec TransformSpec::rotation_cayley(const Scalar& a, const Scalar& b, const Scalar& c)
{
    // (1 - A)^{-1}(1 + A) = (1 + A)^2 / (1 + a^2 + b^2 + c^2) expanded for skew A
    Scalar n = Scalar(1) + a * a + b * b + c * c;
    Scalar m[3][3] = {{Scalar(1) + a * a - b * b - c * c, Scalar(2) * (a * b - c), Scalar(2) * (a * c + b)},
                      {Scalar(2) * (a * b + c), Scalar(1) - a * a + b * b - c * c, Scalar(2) * (b * c - a)},
                      {Scalar(2) * (a * c - b), Scalar(2) * (b * c + a), Scalar(1) - a * a - b * b + c * c}};
    Matrix3 R;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            R[i][j] = num(m[i][j] / n);
    return rotation(R);
}

TransformSpec TransformSpec::dilatation(const Scalar& k)
{
    if (k.is_zero() || !k.is_real())
        throw std::invalid_argument("dilatation factor must be a nonzero real rational");
    TransformSpec t;
    t.kind = Kind::Dilatation;
    t.k = num(k);
    return t;
}

TransformSpec TransformSpec::inversion(std::optional<int> weight)
{
    TransformSpec t;
    t.kind = Kind::Inversion;
    t.weight = weight;
    return t;
}

std::string TransformSpec::name() const
{
    switch (kind) {
    case Kind::Shift: return "shift";
    case Kind::Rotation: return "rotation";
    case Kind::Dilatation: return "dilatation";
    case Kind::Inversion: return "inversion";
    }
    return {};
}

namespace {

std::array<Expr, 3> image(const TransformSpec& t)
{
    using K = TransformSpec::Kind;
    std::array<Expr, 3> img;
    for (int a = 0; a < 3; ++a) {
        switch (t.kind) {
        case K::Shift: img[a] = x(a + 1) + t.nu[a]; break;
        case K::Rotation:
            img[a] = add({t.R[a][0] * x(1), t.R[a][1] * x(2), t.R[a][2] * x(3)});
            break;
        case K::Dilatation: img[a] = t.k * x(a + 1); break;
        case K::Inversion: img[a] = x(a + 1) / r2(); break;
        }
    }
    return img;
}

// N[c][a] = dy_c / dx_a expressed in y.
Matrix3 inverse_jacobian(const TransformSpec& t)
{
    using K = TransformSpec::Kind;
    Matrix3 N;
    for (int c = 0; c < 3; ++c)
        for (int a = 0; a < 3; ++a) {
            Expr d = Expr(c == a ? 1L : 0L);
            switch (t.kind) {
            case K::Shift: N[c][a] = d; break;
            case K::Rotation: N[c][a] = t.R[a][c]; break;
            case K::Dilatation: N[c][a] = d / t.k; break;
            case K::Inversion: N[c][a] = d * r2() - Expr(2L) * x(c + 1) * x(a + 1); break;
            }
        }
    return N;
}

DiffOp multiplier(const Expr& e)
{
    DiffOp d;
    d.terms[{0, 0, 0}] = e;
    return d;
}

}  // namespace

DiffOp change_coordinates(const TransformSpec& t, const DiffOp& L, int weight)
{
    auto img = image(t);
    Matrix3 N = inverse_jacobian(t);
    std::array<DiffOp, 3> D;
    for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c) {
            if (N[c][a].is_zero())
                continue;
            DiffOp::Index ix{0, 0, 0};
            ix[c] = 1;
            D[a].terms[ix] = N[c][a];
        }
    DiffOp out;
    for (const auto& [ix, coef] : L.terms) {
        DiffOp term = multiplier(substitute_vars(coef, img));
        for (int a = 0; a < 3; ++a)
            for (int k = 0; k < ix[a]; ++k)
                term = term * D[a];
        out = out + term;
    }
    if (weight != 0) {
        Expr W = pow(r2(), mpq_class(weight, 2));
        out = multiplier(W) * out * multiplier(pow(r2(), mpq_class(-weight, 2)));
    }
    return out.simplified();
}

namespace {

ops::PDMHamiltonian extract_form(const ops::SecondOrderOp& s)
{
    Expr f = normalize(-s.A(1, 1));
    for (int a = 1; a <= 3; ++a)
        for (int b = a; b <= 3; ++b) {
            Expr want = a == b ? -f : Expr(0L);
            if (!proved_zero(s.A(a, b) - want))
                throw FormError("second-order part is not isotropic", to_string(normalize(s.A(a, b))));
        }
    for (int a = 1; a <= 3; ++a) {
        Expr obs = normalize(s.B[a - 1] + diff(f, a));
        if (!obs.is_zero())
            throw FormError("irreducible first-order term along x" + std::to_string(a), to_string(obs));
    }
    return {f, normalize(-s.C)};
}

}  // namespace

TransformResult transform_hamiltonian(const TransformSpec& t, const ops::PDMHamiltonian& h)
{
    DiffOp H = DiffOp::from(ops::hamiltonian_to_op(h));
    if (t.kind != TransformSpec::Kind::Inversion)
        return {extract_form(change_coordinates(t, H, 0).to_second_order()), 0};
    if (has_transcendental(h.f) || has_transcendental(h.V) || has_abstract(h.f) || has_abstract(h.V))
        throw std::invalid_argument("inversion requires rational f and V");
    if (t.weight)
        return {extract_form(change_coordinates(t, H, *t.weight).to_second_order()), *t.weight};
    std::string last;
    for (int w = -3; w <= 3; ++w) {
        try {
            return {extract_form(change_coordinates(t, H, w).to_second_order()), w};
        } catch (const FormError& e) {
            last = e.obstruction;
        }
    }
    throw FormError("no weight in -3..3 gives the p f p - V form", last);
}

ops::PDMHamiltonian apply_transform(const TransformSpec& t, const ops::PDMHamiltonian& h)
{
    return transform_hamiltonian(t, h).h;
}

ops::FirstOrderOp transform_op(const TransformSpec& t, const ops::FirstOrderOp& q, int weight)
{
    DiffOp d = change_coordinates(t, DiffOp::from(q), weight);
    const Expr i = imag_unit();
    ops::FirstOrderOp out{{Expr(0L), Expr(0L), Expr(0L)}, Expr(0L)};
    for (const auto& [ix, c] : d.terms) {
        int ord = ix[0] + ix[1] + ix[2];
        if (ord == 0)
            out.eta = normalize(i * c);
        else if (ord == 1)
            for (int a = 0; a < 3; ++a)
                if (ix[a])
                    out.xi[a] = normalize(i * c);
    }
    return out;
}

}  // namespace pdm::conf
