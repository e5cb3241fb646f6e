#include "pdm/casimir.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pdm::casimir {

using namespace pdm::sym;
using report::VerificationReport;

namespace {

const FirstOrderOp kZero{{Expr(0L), Expr(0L), Expr(0L)}, Expr(0L)};

// x^a p^b - x^b p^a
FirstOrderOp angular(int a, int b)
{
    FirstOrderOp q = kZero;
    q.xi[b - 1] = x(a);
    q.xi[a - 1] = -x(b);
    return q;
}

// (1/2)(r^2 + s) p^a - x^a x^b p^b + (3i/2) x^a
FirstOrderOp boost(int a, long s)
{
    FirstOrderOp q = kZero;
    for (int b = 1; b <= 3; ++b)
        q.xi[b - 1] = normalize((b == a ? rational(1, 2) * (r2() + Expr(s)) : Expr(0L)) - x(a) * x(b));
    q.eta = rational(-3, 2) * x(a);
    return q;
}

SecondOrderOp zero_second()
{
    SecondOrderOp s;
    for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j)
            s.set_A(i, j, Expr(0L));
    s.B = {Expr(0L), Expr(0L), Expr(0L)};
    s.C = Expr(0L);
    return s;
}

SecondOrderOp square_sum(const std::array<FirstOrderOp, 3>& qs)
{
    SecondOrderOp s = zero_second();
    for (const auto& q : qs)
        s = s + ops::compose_first_order(q, q);
    return s;
}

bool slots_zero(const SecondOrderOp& s)
{
    for (const auto& c : s.slots())
        if (!proved_zero(c))
            return false;
    return true;
}

bool op_zero(const FirstOrderOp& q)
{
    return proved_zero(q.eta) && proved_zero(q.xi[0]) && proved_zero(q.xi[1]) && proved_zero(q.xi[2]);
}

// Nonzero slots with their names, for failure detail.
std::string nonzero_slots(const SecondOrderOp& s)
{
    std::string out;
    auto vals = s.slots();
    const auto& names = SecondOrderOp::slot_names();
    for (std::size_t k = 0; k < vals.size(); ++k) {
        Expr v = normalize(vals[k]);
        if (!v.is_zero())
            out += (out.empty() ? "" : "; ") + names[k] + " = " + to_string(v);
    }
    return out;
}

bool is_so4(const std::string& tag)
{
    if (tag == "so4")
        return true;
    if (tag == "so13")
        return false;
    throw std::invalid_argument("unknown realization '" + tag + "'");
}

}  // namespace

Realization realization(const std::string& tag)
{
    bool so4 = is_so4(tag);
    Realization r;
    r.tag = tag;
    FirstOrderOp m12 = angular(1, 2), m13 = angular(1, 3), m23 = angular(2, 3);
    r.L = {m23, ops::scale(m13, Expr(-1L)), m12};
    long s = so4 ? -1 : 1;
    for (int a = 1; a <= 3; ++a)
        r.B[a - 1] = boost(a, s);
    r.labels = {"M12", "M13", "M23"};
    r.ops = {m12, m13, m23};
    for (int a = 1; a <= 3; ++a) {
        r.labels.push_back((so4 ? "M4" : "M0") + std::to_string(a));
        r.ops.push_back(r.B[a - 1]);
    }
    return r;
}

CasimirPair build_casimirs(const std::string& tag)
{
    Realization r = realization(tag);
    SecondOrderOp l2 = square_sum(r.L), b2 = square_sum(r.B);
    CasimirPair c;
    c.tag = tag;
    c.C1 = ops::simplify(is_so4(tag) ? l2 + b2 : l2 - b2);
    SecondOrderOp c2 = zero_second();
    for (int a = 0; a < 3; ++a)
        c2 = c2 + ops::compose_first_order(r.B[a], r.L[a]);
    c.C2 = ops::simplify(c2);
    return c;
}

SecondOrderOp scaled_hamiltonian(const std::string& tag, long v_coeff, long shift)
{
    long s = is_so4(tag) ? 1 : -1;
    Expr f = pow(Expr(1L) + Expr(s) * r2(), 2L);
    Expr V = Expr(v_coeff) * r2() + Expr(shift);
    return ops::hamiltonian_to_op({f, V});
}

VerificationReport verify_casimir_identity(const std::string& tag)
{
    bool so4 = is_so4(tag);
    VerificationReport rep;
    rep.title = "casimir identities " + tag;
    CasimirPair c = build_casimirs(tag);
    // (1/4)(H - 9) for so4 and (1/4)(H + 9) for so13; H + k has V shifted by -k
    long k = so4 ? -9 : 9;
    std::string printed = so4 ? "C1 - (H - 9)/4 = 0" : "C1 - (H + 9)/4 = 0";
    SecondOrderOp d = ops::simplify(c.C1 - ops::scale(scaled_hamiltonian(tag, 6, -k), rational(1, 4)));
    bool ok = slots_zero(d);
    if (ok)
        rep.pass(tag, printed, "symbolic", "10/10 coefficient slots proved zero");
    else
        rep.fail(tag, printed, "symbolic", nonzero_slots(d));

    if (!ok) {
        SecondOrderOp alt =
            ops::simplify(c.C1 + ops::scale(scaled_hamiltonian(tag, 6, -k), rational(1, 4)));
        std::string label = so4 ? "C1 + (H - 9)/4 = 0" : "C1 + (H + 9)/4 = 0";
        if (slots_zero(alt))
            rep.annotate(tag, label, "opposite-sign identity proved on all 10 slots");
        else
            rep.annotate(tag, label, "opposite-sign identity also fails: " + nonzero_slots(alt));
    }

    if (slots_zero(c.C2))
        rep.pass(tag, "C2 = 0", "symbolic", "10/10 coefficient slots proved zero");
    else
        rep.fail(tag, "C2 = 0", "symbolic", nonzero_slots(c.C2));

    // mutation control: 6r^2 -> 5r^2 must break both sign readings
    SecondOrderOp m = scaled_hamiltonian(tag, 5, -k);
    SecondOrderOp dm = ops::simplify(c.C1 - ops::scale(m, rational(1, 4)));
    SecondOrderOp dp = ops::simplify(c.C1 + ops::scale(m, rational(1, 4)));
    ZeroStatus zm = is_zero(dm.C), zp = is_zero(dp.C);
    if (zm.kind == ZeroStatus::NonZero && !slots_zero(dp))
        rep.pass(tag, "mutation 6r^2 -> 5r^2 breaks the identity", "symbolic",
                 "C slot nonzero: " + to_string(normalize(dm.C)));
    else
        rep.fail(tag, "mutation 6r^2 -> 5r^2 breaks the identity", "symbolic",
                 std::string("mutated identity still holds (") + zm.name() + ", " + zp.name() + ")");
    return rep;
}

VerificationReport verify_casimir_structure(const std::string& tag)
{
    bool so4 = is_so4(tag);
    VerificationReport rep;
    rep.title = "casimir structure " + tag;
    Realization r = realization(tag);
    CasimirPair c = build_casimirs(tag);
    ops::DiffOp c1 = ops::DiffOp::from(c.C1);
    for (std::size_t k = 0; k < r.ops.size(); ++k) {
        ops::DiffOp cm = ops::commutator(c1, ops::DiffOp::from(r.ops[k]));
        bool z = true;
        for (const auto& [ix, coef] : cm.terms)
            z = z && proved_zero(coef);
        std::string label = "[C1, " + r.labels[k] + "] = 0";
        if (z)
            rep.pass(tag, label, "symbolic");
        else
            rep.fail(tag, label, "symbolic", "commutator has nonzero coefficients");
    }
    if (!so4)
        return rep;

    std::array<FirstOrderOp, 3> q, g;
    for (int a = 0; a < 3; ++a) {
        q[a] = ops::simplify(ops::scale(r.B[a] + r.L[a], rational(1, 2)));
        g[a] = ops::simplify(ops::scale(r.L[a] - r.B[a], rational(1, 2)));
    }
    const Expr i = imag_unit();
    auto cyc = [](int a, int b) { return 3 - a - b; };
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            int cc = cyc(a, b);
            long e = ((b - a + 3) % 3 == 1) ? 1 : -1;
            std::string ab = std::to_string(a + 1) + "," + std::to_string(b + 1);
            auto check = [&](const std::string& label, const FirstOrderOp& got, const FirstOrderOp& want) {
                if (op_zero(ops::simplify(got - want)))
                    rep.pass(tag, label, "symbolic");
                else
                    rep.fail(tag, label, "symbolic", ops::to_text(ops::simplify(got - want)));
            };
            check("[q" + ab + "] = i eps q", ops::commute_qq(q[a], q[b]), ops::scale(q[cc], Expr(e) * i));
            check("[g" + ab + "] = i eps g", ops::commute_qq(g[a], g[b]), ops::scale(g[cc], Expr(e) * i));
        }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            std::string label = "[q" + std::to_string(a + 1) + ",g" + std::to_string(b + 1) + "] = 0";
            if (op_zero(ops::commute_qq(q[a], g[b])))
                rep.pass(tag, label, "symbolic");
            else
                rep.fail(tag, label, "symbolic", ops::to_text(ops::commute_qq(q[a], g[b])));
        }
    SecondOrderOp q2 = square_sum(q), g2 = square_sum(g);
    SecondOrderOp d1 = ops::simplify(c.C1 - ops::scale(q2 + g2, Expr(2L)));
    SecondOrderOp d2 = ops::simplify(c.C2 - ops::scale(q2 - g2, Expr(2L)));
    if (slots_zero(d1))
        rep.pass(tag, "C1 = 2(q^2 + g^2)", "symbolic");
    else
        rep.fail(tag, "C1 = 2(q^2 + g^2)", "symbolic", nonzero_slots(d1));
    if (slots_zero(d2))
        rep.pass(tag, "C2 = 2(q^2 - g^2)", "symbolic");
    else
        rep.fail(tag, "C2 = 2(q^2 - g^2)", "symbolic", nonzero_slots(d2));
    return rep;
}

SpectrumLevel algebraic_spectrum_so4(int n)
{
    if (n < 1)
        throw std::domain_error("principal number must be at least 1");
    SpectrumLevel s;
    s.n = n;
    s.etilde = 4L * n * n + 5;
    s.e_mu_coeff = s.etilde;
    s.c1 = long(n) * n - 1;
    s.q = mpq_class(n - 1, 2);
    s.q.canonicalize();
    for (int l = 0; l <= n - 1; ++l)
        s.allowed_l.push_back(l);
    s.energy = normalize(param("mu") * Expr(s.etilde) + param("nu"));
    return s;
}

VerificationReport spectrum_bridge(int nmax)
{
    VerificationReport rep;
    rep.title = "so4 casimir eigenvalue bridge";
    for (int n = 1; n <= nmax; ++n) {
        SpectrumLevel s = algebraic_spectrum_so4(n);
        mpq_class lhs = 4 * s.q * (s.q + 1);
        std::string label = "n=" + std::to_string(n) + " 4q(q+1) = n^2-1";
        if (lhs == mpq_class(s.c1) && s.etilde == 4 * s.c1 + 9 && long(s.allowed_l.size()) == n)
            rep.pass("so4", label, "exact", "Etilde = " + std::to_string(s.etilde));
        else
            rep.fail("so4", label, "exact", "4q(q+1) = " + lhs.get_str());
    }
    return rep;
}

std::string spectrum_csv(int nmax)
{
    std::ostringstream os;
    os << "n,Etilde,E_mu_coeff,E_const\n";
    for (int n = 1; n <= nmax; ++n) {
        SpectrumLevel s = algebraic_spectrum_so4(n);
        os << n << ',' << s.etilde << ',' << s.e_mu_coeff << ",nu\n";
    }
    return os.str();
}

EnergyWindow so13_energy_window(double j1sq)
{
    EnergyWindow w;
    w.j1sq = j1sq;
    w.etilde = -5.0 - j1sq;
    w.principal_window = w.etilde >= -6.0 && w.etilde <= -5.0;
    w.subsidiary_window = w.etilde >= -5.0;
    double c1 = 1.0 - j1sq;
    w.from_plus_quarter = 4.0 * c1 - 9.0;
    w.from_minus_quarter = -4.0 * c1 - 9.0;
    std::ostringstream a;
    a << "printed -5 - j1^2 = " << w.etilde << "; c1 = 1 - j1^2 with C1 = (H+9)/4 gives 4c1 - 9 = "
      << w.from_plus_quarter << "; with the proved C1 = -(H+9)/4 it gives -4c1 - 9 = " << w.from_minus_quarter;
    w.annotations.push_back(a.str());
    if (j1sq < 0)
        w.annotations.push_back("imaginary j1 (principal series) lands in the window labelled subsidiary");
    else if (j1sq <= 1)
        w.annotations.push_back("real 0 <= j1 <= 1 (subsidiary series) lands in the window labelled principal");
    return w;
}

VerificationReport so13_window_report()
{
    VerificationReport rep;
    rep.title = "so13 energy windows";
    rep.annotate("so13", "energy formula side by side",
                 "printed: E = -5 - j1^2; from C1 = (H+9)/4 and c1 = 1 - j1^2: E = 4(1 - j1^2) - 9 = -5 - 4 j1^2; "
                 "from the proved C1 = -(H+9)/4: E = -4(1 - j1^2) - 9 = -13 + 4 j1^2");
    rep.annotate("so13", "series labels",
                 "principal series j1 = i lambda gives c1 = 1 + lambda^2 and printed E = -5 + lambda^2 >= -5, "
                 "the window printed for the subsidiary series; 0 <= j1 <= 1 gives -6 <= E <= -5, the window "
                 "printed for the principal series");
    for (double j : {1.0, 0.0, -4.0}) {
        EnergyWindow w = so13_energy_window(j);
        std::ostringstream label;
        label << "j1^2 = " << j;
        std::ostringstream d;
        d << "E = " << w.etilde << (w.principal_window ? " in [-6,-5]" : "")
          << (w.subsidiary_window ? " in [-5,inf)" : "");
        for (const auto& s : w.annotations)
            d << "; " << s;
        rep.annotate("so13", label.str(), d.str());
    }
    return rep;
}

}  // namespace pdm::casimir
