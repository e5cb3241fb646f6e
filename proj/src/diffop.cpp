#include "pdm/diffop.hpp"

#include <stdexcept>

namespace pdm::ops {

using namespace pdm::sym;

namespace {

const Expr& I() { static const Expr i = imag_unit(); return i; }

std::array<Expr, 3> X() { return {x(1), x(2), x(3)}; }

Expr eps(int a, int b, int c)
{
    if (a == b || b == c || a == c)
        return Expr(0L);
    int p = (a - b) * (b - c) * (c - a);  // sign of the permutation of (1,2,3)
    return Expr(p > 0 ? 1L : -1L);
}

Expr dot(const std::array<Expr, 3>& u, const std::array<Expr, 3>& v)
{
    return add({u[0] * v[0], u[1] * v[1], u[2] * v[2]});
}

}  // namespace

int SecondOrderOp::index(int a, int b)
{
    if (a > b)
        std::swap(a, b);
    if (a == b)
        return a - 1;
    if (a == 1)
        return b == 2 ? 3 : 4;
    return 5;
}

std::vector<Expr> SecondOrderOp::slots() const
{
    return {a_[0], a_[1], a_[2], a_[3], a_[4], a_[5], B[0], B[1], B[2], C};
}

const std::vector<std::string>& SecondOrderOp::slot_names()
{
    static const std::vector<std::string> n = {"A11", "A22", "A33", "A12", "A13",
                                               "A23", "B1",  "B2",  "B3",  "C"};
    return n;
}

KillingParams& KillingParams::operator+=(const KillingParams& o)
{
    for (int a = 0; a < 3; ++a) {
        lambda[a] = lambda[a] + o.lambda[a];
        mu_rot[a] = mu_rot[a] + o.mu_rot[a];
        nu[a] = nu[a] + o.nu[a];
    }
    omega = omega + o.omega;
    c0 = c0 + o.c0;
    return *this;
}

KillingParams KillingParams::scaled(const Expr& k) const
{
    KillingParams r;
    for (int a = 0; a < 3; ++a) {
        r.lambda[a] = k * lambda[a];
        r.mu_rot[a] = k * mu_rot[a];
        r.nu[a] = k * nu[a];
    }
    r.omega = k * omega;
    r.c0 = k * c0;
    return r;
}

DiffOp DiffOp::from(const FirstOrderOp& q)
{
    DiffOp d;
    for (int a = 0; a < 3; ++a) {
        if (q.xi[a].is_zero())
            continue;
        Index ix{0, 0, 0};
        ix[a] = 1;
        d.terms[ix] = -(I() * q.xi[a]);
    }
    if (!q.eta.is_zero())
        d.terms[{0, 0, 0}] = -(I() * q.eta);
    return d;
}

DiffOp DiffOp::from(const SecondOrderOp& s)
{
    DiffOp d;
    for (int a = 1; a <= 3; ++a)
        for (int b = a; b <= 3; ++b) {
            const Expr& c = s.A(a, b);
            if (c.is_zero())
                continue;
            Index ix{0, 0, 0};
            ix[a - 1] += 1;
            ix[b - 1] += 1;
            d.terms[ix] = a == b ? c : Expr(2L) * c;
        }
    for (int a = 0; a < 3; ++a) {
        if (s.B[a].is_zero())
            continue;
        Index ix{0, 0, 0};
        ix[a] = 1;
        d.terms[ix] = s.B[a];
    }
    if (!s.C.is_zero())
        d.terms[{0, 0, 0}] = s.C;
    return d;
}

int DiffOp::order() const
{
    int o = 0;
    for (const auto& [ix, c] : terms)
        if (!c.is_zero())
            o = std::max(o, ix[0] + ix[1] + ix[2]);
    return o;
}

namespace {

long binom(int n, int k)
{
    long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

Expr partial(const Expr& e, const DiffOp::Index& g)
{
    Expr r = e;
    for (int a = 0; a < 3; ++a)
        for (int k = 0; k < g[a]; ++k)
            r = diff(r, a + 1);
    return r;
}

void accumulate(std::map<DiffOp::Index, std::vector<Expr>>& acc, const DiffOp::Index& ix, Expr e)
{
    if (!e.is_zero())
        acc[ix].push_back(std::move(e));
}

}  // namespace

DiffOp DiffOp::operator*(const DiffOp& o) const
{
    std::map<Index, std::vector<Expr>> acc;
    for (const auto& [al, c] : terms) {
        for (const auto& [be, d] : o.terms) {
            for (int g0 = 0; g0 <= al[0]; ++g0)
                for (int g1 = 0; g1 <= al[1]; ++g1)
                    for (int g2 = 0; g2 <= al[2]; ++g2) {
                        Index g{g0, g1, g2};
                        Expr dd = partial(d, g);
                        if (dd.is_zero())
                            continue;
                        long k = binom(al[0], g0) * binom(al[1], g1) * binom(al[2], g2);
                        Index ix{al[0] - g0 + be[0], al[1] - g1 + be[1], al[2] - g2 + be[2]};
                        accumulate(acc, ix, mul({Expr(k), c, dd}));
                    }
        }
    }
    DiffOp r;
    for (auto& [ix, v] : acc)
        r.terms[ix] = add(std::move(v));
    return r;
}

DiffOp DiffOp::operator+(const DiffOp& o) const
{
    DiffOp r = *this;
    for (const auto& [ix, c] : o.terms) {
        auto it = r.terms.find(ix);
        r.terms[ix] = it == r.terms.end() ? c : it->second + c;
    }
    return r;
}

DiffOp DiffOp::operator-(const DiffOp& o) const { return *this + o.scaled(Expr(-1L)); }

DiffOp DiffOp::scaled(const Expr& k) const
{
    DiffOp r;
    for (const auto& [ix, c] : terms)
        r.terms[ix] = k * c;
    return r;
}

DiffOp DiffOp::simplified() const
{
    DiffOp r;
    for (const auto& [ix, c] : terms) {
        Expr s = sym::simplify(c);
        if (!s.is_zero())
            r.terms[ix] = s;
    }
    return r;
}

SecondOrderOp DiffOp::to_second_order() const
{
    SecondOrderOp s;
    for (const auto& [ix, c] : terms) {
        int ord = ix[0] + ix[1] + ix[2];
        if (ord > 2) {
            if (!proved_zero(c))
                throw std::logic_error("operator has a non-vanishing coefficient of order " +
                                       std::to_string(ord));
            continue;
        }
        if (ord == 0) {
            s.C = s.C + c;
        } else if (ord == 1) {
            for (int a = 0; a < 3; ++a)
                if (ix[a])
                    s.B[a] = s.B[a] + c;
        } else {
            int a = -1, b = -1;
            for (int k = 0; k < 3; ++k)
                for (int m = 0; m < ix[k]; ++m)
                    (a < 0 ? a : b) = k + 1;
            s.set_A(a, b, s.A(a, b) + (a == b ? c : c / Expr(2L)));
        }
    }
    return s;
}

DiffOp commutator(const DiffOp& a, const DiffOp& b) { return (a * b - b * a).simplified(); }

FirstOrderOp killing_to_op(const KillingParams& p)
{
    auto X_ = X();
    Expr lx = dot(p.lambda, X_);
    Expr rr = r2();
    FirstOrderOp q;
    for (int a = 1; a <= 3; ++a) {
        std::vector<Expr> t{p.lambda[a - 1] * rr, Expr(-2L) * X_[a - 1] * lx,
                            p.omega * X_[a - 1], p.nu[a - 1]};
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                Expr e = eps(a, i, j);
                if (!e.is_zero())
                    t.push_back(mul({e, p.mu_rot[i - 1], X_[j - 1]}));
            }
        q.xi[a - 1] = sym::simplify(add(std::move(t)));
    }
    q.eta = sym::simplify(add({Expr(-3L) * lx, rational(3, 2) * p.omega, I() * p.c0}));
    return q;
}

SecondOrderOp hamiltonian_to_op(const PDMHamiltonian& h)
{
    SecondOrderOp s;
    for (int a = 1; a <= 3; ++a) {
        s.set_A(a, a, -h.f);
        s.B[a - 1] = -diff(h.f, a);
    }
    s.C = -h.V;
    return s;
}

SecondOrderOp commute_hq(const PDMHamiltonian& h, const FirstOrderOp& q)
{
    DiffOp H = DiffOp::from(hamiltonian_to_op(h));
    DiffOp Q = DiffOp::from(q);
    return simplify(commutator(H, Q).to_second_order());
}

FirstOrderOp commute_qq(const FirstOrderOp& q1, const FirstOrderOp& q2)
{
    FirstOrderOp r;
    for (int a = 0; a < 3; ++a)
        r.xi[a] = sym::simplify(-(I() * (gradient_dot(q1.xi, q2.xi[a]) - gradient_dot(q2.xi, q1.xi[a]))));
    r.eta = sym::simplify(-(I() * (gradient_dot(q1.xi, q2.eta) - gradient_dot(q2.xi, q1.eta))));
    return r;
}

SecondOrderOp compose_first_order(const FirstOrderOp& q1, const FirstOrderOp& q2)
{
    return simplify((DiffOp::from(q1) * DiffOp::from(q2)).to_second_order());
}

SecondOrderOp as_second_order(const FirstOrderOp& q) { return DiffOp::from(q).to_second_order(); }

SecondOrderOp operator+(const SecondOrderOp& a, const SecondOrderOp& b)
{
    SecondOrderOp r;
    for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j)
            r.set_A(i, j, a.A(i, j) + b.A(i, j));
    for (int i = 0; i < 3; ++i)
        r.B[i] = a.B[i] + b.B[i];
    r.C = a.C + b.C;
    return r;
}

SecondOrderOp scale(const SecondOrderOp& a, const Expr& k)
{
    SecondOrderOp r;
    for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j)
            r.set_A(i, j, k * a.A(i, j));
    for (int i = 0; i < 3; ++i)
        r.B[i] = k * a.B[i];
    r.C = k * a.C;
    return r;
}

SecondOrderOp operator-(const SecondOrderOp& a, const SecondOrderOp& b) { return a + scale(b, Expr(-1L)); }

SecondOrderOp simplify(const SecondOrderOp& a)
{
    SecondOrderOp r;
    for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j)
            r.set_A(i, j, sym::simplify(a.A(i, j)));
    for (int i = 0; i < 3; ++i)
        r.B[i] = sym::simplify(a.B[i]);
    r.C = sym::simplify(a.C);
    return r;
}

FirstOrderOp operator+(const FirstOrderOp& a, const FirstOrderOp& b)
{
    FirstOrderOp r;
    for (int i = 0; i < 3; ++i)
        r.xi[i] = a.xi[i] + b.xi[i];
    r.eta = a.eta + b.eta;
    return r;
}

FirstOrderOp scale(const FirstOrderOp& a, const Expr& k)
{
    FirstOrderOp r;
    for (int i = 0; i < 3; ++i)
        r.xi[i] = k * a.xi[i];
    r.eta = k * a.eta;
    return r;
}

FirstOrderOp operator-(const FirstOrderOp& a, const FirstOrderOp& b) { return a + scale(b, Expr(-1L)); }

FirstOrderOp simplify(const FirstOrderOp& a)
{
    FirstOrderOp r;
    for (int i = 0; i < 3; ++i)
        r.xi[i] = sym::simplify(a.xi[i]);
    r.eta = sym::simplify(a.eta);
    return r;
}

Expr eta_tilde(const FirstOrderOp& q)
{
    Expr div = add({diff(q.xi[0], 1), diff(q.xi[1], 2), diff(q.xi[2], 3)});
    return sym::simplify(-(I() * (q.eta - div / Expr(2L))));
}

std::pair<Expr, Expr> reduced_determining(const PDMHamiltonian& h, const KillingParams& p)
{
    FirstOrderOp q = killing_to_op(p);
    Expr lx = dot(p.lambda, X());
    Expr r1 = gradient_dot(q.xi, h.f) - Expr(2L) * (p.omega - Expr(2L) * lx) * h.f;
    std::vector<Expr> t{gradient_dot(q.xi, h.V)};
    for (int i = 0; i < 3; ++i)
        t.push_back(Expr(3L) * p.lambda[i] * diff(h.f, i + 1));
    return {r1, add(std::move(t))};
}

PDMHamiltonian abstract_hamiltonian()
{
    auto X_ = X();
    std::vector<Expr> a(X_.begin(), X_.end());
    return {apply("f", {}, a), apply("V", {}, a)};
}

FirstOrderOp abstract_integral()
{
    auto X_ = X();
    std::vector<Expr> a(X_.begin(), X_.end());
    return {{apply("xi1", {}, a), apply("xi2", {}, a), apply("xi3", {}, a)}, apply("eta", {}, a)};
}

bool match_up_to_factor(const Expr& residual, const Expr& reference, Scalar& k)
{
    RatFunc rr = to_rat(residual), rp = to_rat(reference);
    if (!rr.den.empty() || !rp.den.empty() || rp.num.is_zero() || rr.num.is_zero())
        return false;
    const auto& [m, cp] = *rp.num.terms().rbegin();
    auto it = rr.num.terms().find(m);
    if (it == rr.num.terms().end())
        return false;
    k = it->second / cp;
    return proved_zero(residual - num(k) * reference);
}

std::vector<DeterminingEquation> extract_determining(const PDMHamiltonian& h, const FirstOrderOp& q)
{
    SecondOrderOp c = commute_hq(h, q);
    const Expr& f = h.f;
    auto d1 = [](const Expr& e, int a) { return diff(e, a); };
    auto d2 = [](const Expr& e, int a, int b) { return diff(diff(e, a), b); };

    std::vector<DeterminingEquation> out;
    auto push = [&](std::string label, const Expr& res, const Expr& ref) {
        DeterminingEquation d{std::move(label), res, sym::simplify(ref)};
        d.matched = match_up_to_factor(res, d.reference, d.factor);
        out.push_back(std::move(d));
    };

    for (int a = 1; a <= 3; ++a)
        for (int b = a; b <= 3; ++b) {
            std::vector<Expr> t;
            if (a == b)
                for (int cc = 1; cc <= 3; ++cc)
                    t.push_back(q.xi[cc - 1] * d1(f, cc));
            t.push_back(-(f * (d1(q.xi[b - 1], a) + d1(q.xi[a - 1], b))));
            push("second-order(" + std::to_string(a) + "," + std::to_string(b) + ")", c.A(a, b),
                 add(std::move(t)));
        }
    for (int a = 1; a <= 3; ++a) {
        std::vector<Expr> t;
        for (int i = 1; i <= 3; ++i) {
            t.push_back(-(q.xi[i - 1] * d2(f, a, i)));
            t.push_back(d1(f, i) * d1(q.xi[a - 1], i));
            t.push_back(f * d2(q.xi[a - 1], i, i));
        }
        t.push_back(Expr(2L) * f * d1(q.eta, a));
        push("first-order(" + std::to_string(a) + ")", c.B[a - 1], add(std::move(t)));
    }
    std::vector<Expr> t;
    for (int a = 1; a <= 3; ++a) {
        t.push_back(d1(f, a) * d1(q.eta, a));
        t.push_back(f * d2(q.eta, a, a));
        t.push_back(-(q.xi[a - 1] * d1(h.V, a)));
    }
    push("zeroth-order", c.C, add(std::move(t)));
    return out;
}

std::string to_text(const FirstOrderOp& q)
{
    return "(op1 (xi1 " + to_string(q.xi[0]) + ") (xi2 " + to_string(q.xi[1]) + ") (xi3 " +
           to_string(q.xi[2]) + ") (eta " + to_string(q.eta) + "))";
}

std::string to_text(const SecondOrderOp& s)
{
    std::string out = "(op2";
    auto names = SecondOrderOp::slot_names();
    auto sl = s.slots();
    for (std::size_t i = 0; i < sl.size(); ++i)
        out += " (" + names[i] + " " + to_string(sl[i]) + ")";
    return out + ")";
}

}  // namespace pdm::ops
