#include "pdm/algebra.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace pdm::sym {

namespace {

class Registry {
public:
    Registry()
    {
        for (int a = 1; a <= 3; ++a) {
            AtomInfo info{AtomKind::Var, "x" + std::to_string(a), var(a)};
            info.var = a;
            intern(std::move(info));
        }
    }

    AtomId intern(AtomInfo info)
    {
        {
            std::shared_lock lk(mu_);
            auto it = by_key_.find(info.key);
            if (it != by_key_.end())
                return it->second;
        }
        std::unique_lock lk(mu_);
        auto it = by_key_.find(info.key);
        if (it != by_key_.end())
            return it->second;
        AtomId id = AtomId(atoms_.size());
        by_key_.emplace(info.key, id);
        atoms_.push_back(std::move(info));
        return id;
    }

    const AtomInfo& get(AtomId id)
    {
        std::shared_lock lk(mu_);
        return atoms_.at(id);
    }

    std::size_t size()
    {
        std::shared_lock lk(mu_);
        return atoms_.size();
    }

private:
    std::shared_mutex mu_;
    std::deque<AtomInfo> atoms_;
    std::unordered_map<std::string, AtomId> by_key_;
};

Registry& registry()
{
    static Registry r;
    return r;
}

struct NotInvertible : std::runtime_error {
    NotInvertible() : std::runtime_error("denominator cannot be rationalized") {}
};

}  // namespace

AtomInfo atom_info(AtomId a) { return registry().get(a); }
std::size_t atom_count() { return registry().size(); }

std::uint32_t Monomial::degree(AtomId a) const
{
    for (const auto& p : f)
        if (p.first == a)
            return p.second;
    return 0;
}

bool MonoLess::operator()(const Monomial& a, const Monomial& b) const
{
    std::size_t i = 0, j = 0;
    while (i < a.f.size() && j < b.f.size()) {
        if (a.f[i].first == b.f[j].first) {
            if (a.f[i].second != b.f[j].second)
                return a.f[i].second < b.f[j].second;
            ++i;
            ++j;
        } else if (a.f[i].first < b.f[j].first) {
            return false;
        } else {
            return true;
        }
    }
    return i == a.f.size() && j < b.f.size();
}

Monomial mono_mul(const Monomial& a, const Monomial& b)
{
    Monomial r;
    r.f.reserve(a.f.size() + b.f.size());
    std::size_t i = 0, j = 0;
    while (i < a.f.size() || j < b.f.size()) {
        if (j == b.f.size() || (i < a.f.size() && a.f[i].first < b.f[j].first)) {
            r.f.push_back(a.f[i++]);
        } else if (i == a.f.size() || b.f[j].first < a.f[i].first) {
            r.f.push_back(b.f[j++]);
        } else {
            r.f.emplace_back(a.f[i].first, a.f[i].second + b.f[j].second);
            ++i;
            ++j;
        }
    }
    return r;
}

namespace {

// a / b for monomials; false if b does not divide a.
bool mono_div(const Monomial& a, const Monomial& b, Monomial& q)
{
    q.f.clear();
    std::size_t i = 0;
    for (const auto& p : b.f) {
        while (i < a.f.size() && a.f[i].first < p.first)
            q.f.push_back(a.f[i++]);
        if (i == a.f.size() || a.f[i].first != p.first || a.f[i].second < p.second)
            return false;
        if (a.f[i].second > p.second)
            q.f.emplace_back(p.first, a.f[i].second - p.second);
        ++i;
    }
    while (i < a.f.size())
        q.f.push_back(a.f[i++]);
    return true;
}

}  // namespace

Poly::Poly(const Scalar& c)
{
    if (!c.is_zero())
        t_.emplace(Monomial{}, c);
}

Poly Poly::atom(AtomId a, std::uint32_t e)
{
    Poly p;
    Monomial m;
    if (e > 0)
        m.f.emplace_back(a, e);
    p.t_.emplace(std::move(m), Scalar(1));
    return p;
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }

Scalar Poly::constant() const
{
    auto it = t_.find(Monomial{});
    return it == t_.end() ? Scalar(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Scalar& c)
{
    if (c.is_zero())
        return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        t_.erase(it);
}

Poly& Poly::operator+=(const Poly& o)
{
    for (const auto& [m, c] : o.t_)
        add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    for (const auto& [m, c] : o.t_)
        add_term(m, -c);
    return *this;
}

Poly Poly::operator*(const Poly& o) const
{
    Poly r;
    for (const auto& [m1, c1] : t_)
        for (const auto& [m2, c2] : o.t_)
            r.add_term(mono_mul(m1, m2), c1 * c2);
    return r;
}

Poly Poly::operator*(const Scalar& c) const
{
    if (c.is_zero())
        return Poly();
    Poly r = *this;
    for (auto& [m, v] : r.t_)
        v *= c;
    return r;
}

Poly Poly::pow(unsigned n) const
{
    Poly r(Scalar(1)), b = *this;
    while (n) {
        if (n & 1)
            r = r * b;
        n >>= 1;
        if (n)
            b = b * b;
    }
    return r;
}

std::uint32_t Poly::degree(AtomId a) const
{
    std::uint32_t d = 0;
    for (const auto& [m, c] : t_)
        d = std::max(d, m.degree(a));
    return d;
}

std::vector<AtomId> Poly::atoms() const
{
    std::vector<AtomId> v;
    for (const auto& [m, c] : t_)
        for (const auto& p : m.f)
            v.push_back(p.first);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::map<std::uint32_t, Poly> Poly::coeffs(AtomId a) const
{
    std::map<std::uint32_t, Poly> out;
    for (const auto& [m, c] : t_) {
        Monomial rest;
        std::uint32_t e = 0;
        for (const auto& p : m.f) {
            if (p.first == a)
                e = p.second;
            else
                rest.f.push_back(p);
        }
        out[e].add_term(rest, c);
    }
    return out;
}

bool Poly::has_complex() const
{
    for (const auto& [m, c] : t_)
        if (!c.is_real())
            return true;
    return false;
}

bool has_roots(const Poly& p)
{
    for (AtomId a : p.atoms())
        if (registry().get(a).kind == AtomKind::Root)
            return true;
    return false;
}

void reduce_roots(Poly& p)
{
    std::vector<std::pair<AtomId, const AtomInfo*>> roots;
    for (AtomId a : p.atoms()) {
        const AtomInfo& info = registry().get(a);
        if (info.kind == AtomKind::Root)
            roots.emplace_back(a, &info);
    }
    if (roots.empty())
        return;
    bool needed = false;
    for (const auto& [m, c] : p.terms()) {
        for (const auto& [a, info] : roots)
            if (m.degree(a) >= info->q)
                needed = true;
    }
    if (!needed)
        return;
    Poly out;
    for (const auto& [m, c] : p.terms()) {
        Monomial keep;
        Poly factor(c);
        for (const auto& pr : m.f) {
            const AtomInfo* info = nullptr;
            for (const auto& [a, inf] : roots)
                if (a == pr.first)
                    info = inf;
            if (info && pr.second >= info->q) {
                factor = factor * info->base.pow(pr.second / info->q);
                if (pr.second % info->q)
                    keep.f.emplace_back(pr.first, pr.second % info->q);
            } else {
                keep.f.push_back(pr);
            }
        }
        Poly mono;
        mono.add_term(keep, Scalar(1));
        out += factor * mono;
    }
    p = std::move(out);
}

bool divides_exact(const Poly& a, const Poly& b, Poly& q)
{
    if (b.is_zero())
        return false;
    q = Poly();
    if (a.is_zero())
        return true;
    Poly r = a;
    const Monomial& lb = b.lead_mono();
    Scalar inv = Scalar(1) / b.lead_coeff();
    Monomial qm;
    while (!r.is_zero()) {
        if (!mono_div(r.lead_mono(), lb, qm))
            return false;
        Poly t;
        t.add_term(qm, r.lead_coeff() * inv);
        q += t;
        r -= t * b;
    }
    return true;
}

Poly monic(const Poly& p)
{
    if (p.is_zero())
        return p;
    return p * (Scalar(1) / p.lead_coeff());
}

namespace {

Poly content_in(const Poly& p, AtomId v);

Poly prim_in(const Poly& p, AtomId v)
{
    Poly c = content_in(p, v);
    if (c.is_constant())
        return monic(p);
    Poly q;
    divides_exact(p, c, q);
    return monic(q);
}

Poly prem(Poly a, const Poly& b, AtomId v)
{
    std::uint32_t n = b.degree(v);
    auto bc = b.coeffs(v);
    const Poly& lcb = bc[n];
    while (!a.is_zero()) {
        std::uint32_t d = a.degree(v);
        if (d < n)
            break;
        Poly lca = a.coeffs(v)[d];
        a = a * lcb - lca * Poly::atom(v, d - n) * b;
        a = monic(a);
    }
    return a;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b)
{
    if (a.is_zero())
        return monic(b);
    if (b.is_zero())
        return monic(a);
    if (a.is_constant() || b.is_constant())
        return Poly(Scalar(1));
    if (monic(a) == monic(b))
        return monic(a);
    Poly q;
    if (b.size() <= a.size() && divides_exact(a, b, q))
        return monic(b);
    if (a.size() <= b.size() && divides_exact(b, a, q))
        return monic(a);
    auto va = a.atoms(), vb = b.atoms();
    AtomId v = std::min(va.front(), vb.front());
    bool ina = a.contains(v), inb = b.contains(v);
    if (!inb)
        return poly_gcd(content_in(a, v), b);
    if (!ina)
        return poly_gcd(a, content_in(b, v));
    Poly ca = content_in(a, v), cb = content_in(b, v);
    Poly pa, pb;
    divides_exact(a, ca, pa);
    divides_exact(b, cb, pb);
    Poly gc = poly_gcd(ca, cb);
    if (pa.degree(v) < pb.degree(v))
        std::swap(pa, pb);
    while (true) {
        Poly r = prem(pa, pb, v);
        if (r.is_zero())
            break;
        if (r.degree(v) == 0) {
            pb = Poly(Scalar(1));
            break;
        }
        pa = pb;
        pb = prim_in(r, v);
    }
    if (!pb.is_constant())
        pb = prim_in(pb, v);
    return monic(gc * pb);
}

namespace {

Poly content_in(const Poly& p, AtomId v)
{
    auto cs = p.coeffs(v);
    Poly g;
    for (auto& [e, c] : cs) {
        g = g.is_zero() ? monic(c) : poly_gcd(g, c);
        if (g.is_constant())
            return Poly(Scalar(1));
    }
    return g;
}

std::string mono_key(const Monomial& m)
{
    std::vector<std::string> parts;
    for (const auto& [a, e] : m.f)
        parts.push_back(registry().get(a).key + "^" + std::to_string(e));
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (const auto& p : parts)
        s += p + "*";
    return s;
}

// Coefficient of the term whose monomial key sorts first.
Scalar canonical_first_coeff(const Poly& p)
{
    std::string best;
    Scalar c;
    bool first = true;
    for (const auto& [m, v] : p.terms()) {
        std::string k = mono_key(m);
        if (first || k < best) {
            best = k;
            c = v;
            first = false;
        }
    }
    return c;
}

void add_factor(std::vector<std::pair<Poly, int>>& den, const Poly& f, int m)
{
    if (m == 0)
        return;
    for (auto& d : den)
        if (d.first == f) {
            d.second += m;
            return;
        }
    den.emplace_back(f, m);
}

int factor_mult(const std::vector<std::pair<Poly, int>>& den, const Poly& f)
{
    for (const auto& d : den)
        if (d.first == f)
            return d.second;
    return 0;
}

void cancel_monomials(RatFunc& r)
{
    if (r.num.is_zero()) {
        r.den.clear();
        return;
    }
    for (auto& [f, m] : r.den) {
        if (f.size() != 1 || f.terms().begin()->first.f.size() != 1 ||
            f.terms().begin()->first.f[0].second != 1)
            continue;
        AtomId a = f.terms().begin()->first.f[0].first;
        std::uint32_t k = UINT32_MAX;
        for (const auto& [mm, c] : r.num.terms())
            k = std::min(k, mm.degree(a));
        int c = int(std::min<std::uint32_t>(k, std::uint32_t(m)));
        if (c == 0)
            continue;
        Poly out;
        for (const auto& [mm, cc] : r.num.terms()) {
            Monomial n2;
            for (const auto& p : mm.f) {
                if (p.first == a) {
                    if (p.second > std::uint32_t(c))
                        n2.f.emplace_back(a, p.second - c);
                } else {
                    n2.f.push_back(p);
                }
            }
            out.add_term(n2, cc);
        }
        r.num = std::move(out);
        m -= c;
    }
    r.den.erase(std::remove_if(r.den.begin(), r.den.end(), [](const auto& d) { return d.second == 0; }),
                r.den.end());
}

RatFunc rf_const(const Scalar& c) { return RatFunc{Poly(c), {}}; }

RatFunc rf_mul(const RatFunc& a, const RatFunc& b)
{
    RatFunc r;
    r.num = a.num * b.num;
    if (r.num.is_zero())
        return r;
    reduce_roots(r.num);
    r.den = a.den;
    for (const auto& [f, m] : b.den)
        add_factor(r.den, f, m);
    cancel_monomials(r);
    return r;
}

RatFunc rf_add(const RatFunc& a, const RatFunc& b)
{
    if (a.num.is_zero())
        return b;
    if (b.num.is_zero())
        return a;
    std::vector<std::pair<Poly, int>> L = a.den;
    for (const auto& [f, m] : b.den) {
        bool found = false;
        for (auto& l : L)
            if (l.first == f) {
                l.second = std::max(l.second, m);
                found = true;
            }
        if (!found)
            L.emplace_back(f, m);
    }
    Poly ma(Scalar(1)), mb(Scalar(1));
    for (const auto& [f, m] : L) {
        int da = m - factor_mult(a.den, f), db = m - factor_mult(b.den, f);
        if (da)
            ma = ma * f.pow(unsigned(da));
        if (db)
            mb = mb * f.pow(unsigned(db));
    }
    RatFunc r;
    r.num = a.num * ma;
    r.num += b.num * mb;
    r.den = std::move(L);
    cancel_monomials(r);
    return r;
}

// 1/N with the denominator split into monic root-free factors.
RatFunc rf_recip(const Poly& n)
{
    if (n.is_zero())
        throw std::domain_error("division by zero");
    Poly mult(Scalar(1)), rest = n;
    while (true) {
        AtomId t = 0;
        const AtomInfo* info = nullptr;
        for (AtomId a : rest.atoms()) {
            const AtomInfo& in = registry().get(a);
            if (in.kind == AtomKind::Root) {
                t = a;
                info = &in;
                break;
            }
        }
        if (!info)
            break;
        auto cs = rest.coeffs(t);
        if (cs.size() == 1) {
            std::uint32_t k = cs.begin()->first % info->q;
            Poly f = Poly::atom(t, info->q - k);
            mult = mult * f;
            rest = rest * f;
        } else if (info->q == 2) {
            Poly conj;
            for (const auto& [m, c] : rest.terms())
                conj.add_term(m, m.degree(t) % 2 ? -c : c);
            mult = mult * conj;
            rest = rest * conj;
        } else {
            throw NotInvertible();
        }
        reduce_roots(rest);
        reduce_roots(mult);
    }
    Scalar s = rest.lead_coeff();
    rest = rest * (Scalar(1) / s);
    RatFunc r;
    r.num = mult * (Scalar(1) / s);
    Monomial g;
    bool first = true;
    for (const auto& [m, c] : rest.terms()) {
        if (first) {
            g = m;
            first = false;
            continue;
        }
        Monomial h;
        for (const auto& p : g.f) {
            std::uint32_t d = std::min(p.second, m.degree(p.first));
            if (d)
                h.f.emplace_back(p.first, d);
        }
        g = std::move(h);
    }
    if (!g.empty()) {
        Poly q;
        Poly gp;
        gp.add_term(g, Scalar(1));
        divides_exact(rest, gp, q);
        rest = q;
        for (const auto& [a, e] : g.f)
            add_factor(r.den, Poly::atom(a), int(e));
    }
    if (!rest.is_constant())
        add_factor(r.den, monic(rest), 1);
    else
        r.num = r.num * (Scalar(1) / rest.constant());
    return r;
}

RatFunc rf_inv(const RatFunc& a)
{
    Poly d(Scalar(1));
    for (const auto& [f, m] : a.den)
        d = d * f.pow(unsigned(m));
    return rf_mul(RatFunc{d, {}}, rf_recip(a.num));
}

RatFunc rf_pow(const RatFunc& a, long n)
{
    if (n < 0)
        return rf_pow(rf_inv(a), -n);
    RatFunc r = rf_const(Scalar(1)), b = a;
    while (n) {
        if (n & 1)
            r = rf_mul(r, b);
        n >>= 1;
        if (n)
            b = rf_mul(b, b);
    }
    return r;
}

RatFunc rf_atom(AtomId a) { return RatFunc{Poly::atom(a), {}}; }

bool exact_root(const mpz_class& v, unsigned long d, mpz_class& out)
{
    if (v < 0)
        return false;
    return mpz_root(out.get_mpz_t(), v.get_mpz_t(), d) != 0;
}

// P^(n/d) for a root-free base P assumed positive.
RatFunc rf_root_pow(const Poly& p, const mpz_class& n, unsigned long d)
{
    long nn = n.get_si();
    if (d == 1)
        return rf_pow(RatFunc{p, {}}, nn);
    if (p.is_constant()) {
        mpq_class c = p.constant().re();
        mpz_class a, b;
        if (exact_root(c.get_num(), d, a) && exact_root(c.get_den(), d, b))
            return rf_const(Scalar(mpq_class(a, b)).pow(nn));
    }
    Expr be = poly_to_expr(p);
    AtomInfo info{AtomKind::Root, "root" + std::to_string(d) + ":" + to_string(be),
                  pow(be, mpq_class(1, long(d)))};
    info.base = p;
    info.q = unsigned(d);
    AtomId t = registry().intern(std::move(info));
    if (nn >= 0) {
        RatFunc r = rf_pow(RatFunc{p, {}}, nn / long(d));
        return rf_mul(r, RatFunc{Poly::atom(t, std::uint32_t(nn % long(d))), {}});
    }
    long m = -nn;
    long k = (m + long(d) - 1) / long(d);
    RatFunc r = rf_pow(RatFunc{p, {}}, -k);
    return rf_mul(r, RatFunc{Poly::atom(t, std::uint32_t(k * long(d) - m)), {}});
}

struct NormMemo {
    std::mutex mu;
    std::unordered_map<std::uint64_t, std::vector<std::pair<Expr, Expr>>> map;
};

NormMemo& norm_memo()
{
    static NormMemo m;
    return m;
}

class Converter {
public:
    RatFunc run(const Expr& e)
    {
        auto it = memo_.find(e.get());
        if (it != memo_.end())
            return it->second;
        RatFunc r = convert(e);
        memo_.emplace(e.get(), r);
        keep_.push_back(e);
        return r;
    }

private:
    std::unordered_map<const Node*, RatFunc> memo_;
    std::vector<Expr> keep_;

    RatFunc opaque(const Expr& e)
    {
        const Node& n = e.node();
        Expr c = pow(normalize(n.args[0]), n.exponent);
        std::string key = "opaque:" + to_string(c);
        return rf_atom(registry().intern(AtomInfo{AtomKind::Opaque, key, c}));
    }

    RatFunc convert(const Expr& e)
    {
        const Node& n = e.node();
        switch (n.kind) {
        case Kind::Num:
            return rf_const(n.value);
        case Kind::Var:
            return rf_atom(AtomId(n.var - 1));
        case Kind::Param:
            return rf_atom(registry().intern(AtomInfo{AtomKind::Param, "p:" + n.name, e}));
        case Kind::Add: {
            RatFunc r;
            for (const auto& a : n.args)
                r = rf_add(r, run(a));
            return r;
        }
        case Kind::Mul: {
            RatFunc r = rf_const(Scalar(1));
            for (const auto& a : n.args) {
                r = rf_mul(r, run(a));
                if (r.num.is_zero())
                    return r;
            }
            return r;
        }
        case Kind::Pow:
            return convert_pow(e);
        case Kind::Fn: {
            Expr arg = normalize(n.args[0]);
            Expr c = fn(n.fn, arg);
            if (c.is_num())
                return rf_const(c.num());
            std::string key = std::string(fn_name(n.fn)) + ":" + to_string(arg);
            return rf_atom(registry().intern(AtomInfo{AtomKind::Fn, key, c}));
        }
        case Kind::Apply: {
            std::vector<Expr> args;
            for (const auto& a : n.args)
                args.push_back(normalize(a));
            Expr c = apply(n.name, n.slots, std::move(args));
            std::string key = "f:" + to_string(c);
            return rf_atom(registry().intern(AtomInfo{AtomKind::Apply, key, c}));
        }
        }
        throw std::logic_error("unreachable");
    }

    RatFunc convert_pow(const Expr& e)
    {
        const Node& n = e.node();
        const mpq_class& q = n.exponent;
        try {
            RatFunc b = run(n.args[0]);
            if (q.get_den() == 1)
                return rf_pow(b, q.get_num().get_si());
            if (has_roots(b.num) || b.num.has_complex())
                return opaque(e);
            for (const auto& d : b.den)
                if (d.first.has_complex())
                    return opaque(e);
            if (b.num.is_zero()) {
                if (sgn(q) > 0)
                    return RatFunc{};
                throw std::domain_error("division by zero");
            }
            Poly pn = b.num, pd = expand_den(b);
            mpq_class sn = canonical_first_coeff(pn).re(), sd = canonical_first_coeff(pd).re();
            mpq_class an = abs(sn), ad = abs(sd);
            pn = pn * Scalar(1 / an);
            pd = pd * Scalar(1 / ad);
            if (pn.is_constant() && pn.constant().re() < 0)
                return opaque(e);
            if (pd.is_constant() && pd.constant().re() < 0)
                return opaque(e);
            unsigned long d = q.get_den().get_ui();
            RatFunc r = rf_root_pow(Poly(Scalar(an / ad)), q.get_num(), d);
            if (!pn.is_constant())
                r = rf_mul(r, rf_root_pow(pn, q.get_num(), d));
            if (!pd.is_constant())
                r = rf_mul(r, rf_root_pow(pd, -q.get_num(), d));
            return r;
        } catch (const NotInvertible&) {
            return opaque(e);
        }
    }
};

}  // namespace

Poly expand_den(const RatFunc& r)
{
    Poly d(Scalar(1));
    for (const auto& [f, m] : r.den)
        d = d * f.pow(unsigned(m));
    return d;
}

RatFunc to_rat(const Expr& e)
{
    Converter c;
    return c.run(e);
}

Expr poly_to_expr(const Poly& p)
{
    std::vector<std::pair<std::string, Expr>> terms;
    for (const auto& [m, c] : p.terms()) {
        std::vector<std::pair<std::string, Expr>> fs;
        for (const auto& [a, e] : m.f) {
            const AtomInfo& info = registry().get(a);
            fs.emplace_back(info.key, pow(info.expr, long(e)));
        }
        std::sort(fs.begin(), fs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        std::vector<Expr> f{num(c)};
        for (auto& pr : fs)
            f.push_back(pr.second);
        terms.emplace_back(mono_key(m), mul(std::move(f)));
    }
    std::stable_sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<Expr> out;
    for (auto& t : terms)
        out.push_back(t.second);
    return add(std::move(out));
}

Expr normalize(const Expr& e)
{
    if (e.kind() == Kind::Num || e.kind() == Kind::Var || e.kind() == Kind::Param)
        return e;
    NormMemo& memo = norm_memo();
    {
        std::lock_guard lk(memo.mu);
        auto it = memo.map.find(e.hash());
        if (it != memo.map.end())
            for (const auto& [k, v] : it->second)
                if (structurally_equal(k, e))
                    return v;
    }
    RatFunc r = to_rat(e);
    Expr out;
    if (!r.num.is_zero()) {
        Poly n = r.num, d = expand_den(r);
        if (!d.is_constant()) {
            Poly g = poly_gcd(n, d);
            if (!g.is_constant()) {
                Poly q;
                divides_exact(n, g, q);
                n = q;
                divides_exact(d, g, q);
                d = q;
            }
        }
        Scalar lead = canonical_first_coeff(d);
        n = n * (Scalar(1) / lead);
        d = d * (Scalar(1) / lead);
        out = d.is_constant() ? poly_to_expr(n) : mul({poly_to_expr(n), pow(poly_to_expr(d), -1L)});
    }
    std::lock_guard lk(memo.mu);
    memo.map[e.hash()].emplace_back(e, out);
    return out;
}

Expr simplify(const Expr& e)
{
    RatFunc r = to_rat(e);
    if (r.num.is_zero())
        return Expr(0L);
    std::vector<Expr> f{poly_to_expr(r.num)};
    for (const auto& [p, m] : r.den)
        f.push_back(pow(poly_to_expr(p), long(-m)));
    return mul(std::move(f));
}

bool proved_zero(const Expr& e)
{
    try {
        return to_rat(e).num.is_zero();
    } catch (const std::domain_error&) {
        return false;
    }
}

}  // namespace pdm::sym
