#include "pdm/expr.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace pdm::sym {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v)
{
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= h >> 31;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 29;
    return h;
}

std::uint64_t str_hash(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

Expr make(Node n)
{
    std::uint64_t h = mix(0x51ed27ULL, std::uint64_t(n.kind));
    switch (n.kind) {
    case Kind::Num:
        h = mix(h, str_hash(n.value.str()));
        break;
    case Kind::Var:
        h = mix(h, std::uint64_t(n.var));
        break;
    case Kind::Param:
        h = mix(h, str_hash(n.name));
        break;
    case Kind::Pow:
        h = mix(h, str_hash(n.exponent.get_str()));
        break;
    case Kind::Fn:
        h = mix(h, std::uint64_t(n.fn) + 17);
        break;
    case Kind::Apply:
        h = mix(h, str_hash(n.name));
        for (int s : n.slots)
            h = mix(h, std::uint64_t(s) + 101);
        h = mix(h, 0xabcULL);
        break;
    default:
        break;
    }
    for (const auto& a : n.args)
        h = mix(h, a.hash());
    n.hash = h;
    return Expr(std::make_shared<const Node>(std::move(n)));
}

const Expr& zero_expr()
{
    static const Expr z = make(Node{Kind::Num, Scalar(0)});
    return z;
}

}  // namespace

Expr::Expr() : n_(zero_expr().n_) {}
Expr::Expr(long v) : Expr(sym::num(Scalar(v))) {}
Expr::Expr(const Scalar& s) : Expr(sym::num(s)) {}

Kind Expr::kind() const { return n_->kind; }
std::uint64_t Expr::hash() const { return n_->hash; }
bool Expr::is_zero() const { return n_->kind == Kind::Num && n_->value.is_zero(); }
bool Expr::is_one() const { return n_->kind == Kind::Num && n_->value.is_one(); }
const Scalar& Expr::num() const { return n_->value; }
std::string Expr::str() const { return to_string(*this); }

const char* fn_name(FnKind k)
{
    switch (k) {
    case FnKind::Exp: return "exp";
    case FnKind::Ln: return "ln";
    case FnKind::Atan: return "atan";
    case FnKind::Sin: return "sin";
    case FnKind::Cos: return "cos";
    }
    return "?";
}

Expr num(const Scalar& s)
{
    Node n{Kind::Num};
    n.value = s;
    return make(std::move(n));
}

Expr rational(long n, long d) { return num(Scalar::frac(n, d)); }
Expr imag_unit() { return num(Scalar::i()); }

Expr var(int axis)
{
    if (axis < 1 || axis > 3)
        throw std::invalid_argument("spatial axis must be 1, 2 or 3");
    static const Expr vs[3] = {
        make(Node{Kind::Var, Scalar(0), 1}),
        make(Node{Kind::Var, Scalar(0), 2}),
        make(Node{Kind::Var, Scalar(0), 3}),
    };
    return vs[axis - 1];
}

Expr x(int a) { return var(a); }

Expr param(const std::string& name)
{
    Node n{Kind::Param};
    n.name = name;
    return make(std::move(n));
}

Expr add(std::vector<Expr> terms)
{
    std::vector<Expr> out;
    Scalar c(0);
    std::function<void(const Expr&)> push = [&](const Expr& t) {
        if (t.kind() == Kind::Add) {
            for (const auto& s : t.node().args)
                push(s);
        } else if (t.is_num()) {
            c += t.num();
        } else {
            out.push_back(t);
        }
    };
    for (const auto& t : terms)
        push(t);
    if (!c.is_zero())
        out.push_back(num(c));
    if (out.empty())
        return num(Scalar(0));
    if (out.size() == 1)
        return out[0];
    Node n{Kind::Add};
    n.args = std::move(out);
    return make(std::move(n));
}

Expr mul(std::vector<Expr> factors)
{
    std::vector<Expr> out;
    Scalar c(1);
    std::function<void(const Expr&)> push = [&](const Expr& t) {
        if (t.kind() == Kind::Mul) {
            for (const auto& s : t.node().args)
                push(s);
        } else if (t.is_num()) {
            c *= t.num();
        } else {
            out.push_back(t);
        }
    };
    for (const auto& t : factors)
        push(t);
    if (c.is_zero())
        return num(Scalar(0));
    if (out.empty())
        return num(c);
    if (!c.is_one())
        out.insert(out.begin(), num(c));
    if (out.size() == 1)
        return out[0];
    Node n{Kind::Mul};
    n.args = std::move(out);
    return make(std::move(n));
}

Expr pow(const Expr& base, const mpq_class& exponent)
{
    mpq_class e = exponent;
    e.canonicalize();
    if (sgn(e) == 0)
        return num(Scalar(1));
    if (e == 1)
        return base;
    if (base.is_num()) {
        const Scalar& b = base.num();
        if (b.is_one())
            return base;
        if (b.is_zero() && sgn(e) > 0)
            return base;
        if (e.get_den() == 1 && !b.is_zero() && e.get_num().fits_slong_p())
            return num(b.pow(e.get_num().get_si()));
    }
    if (base.kind() == Kind::Pow && e.get_den() == 1) {
        return pow(base.node().args[0], base.node().exponent * e);
    }
    Node n{Kind::Pow};
    n.exponent = e;
    n.args = {base};
    return make(std::move(n));
}

Expr pow(const Expr& base, long exponent) { return pow(base, mpq_class(exponent)); }
Expr sqrt(const Expr& e) { return pow(e, mpq_class(1, 2)); }

Expr fn(FnKind k, const Expr& arg)
{
    if (arg.is_zero()) {
        switch (k) {
        case FnKind::Exp: return num(Scalar(1));
        case FnKind::Atan: return arg;
        case FnKind::Sin: return arg;
        case FnKind::Cos: return num(Scalar(1));
        case FnKind::Ln: break;
        }
    }
    if (k == FnKind::Ln && arg.is_one())
        return num(Scalar(0));
    Node n{Kind::Fn};
    n.fn = k;
    n.args = {arg};
    return make(std::move(n));
}

Expr exp(const Expr& e) { return fn(FnKind::Exp, e); }
Expr ln(const Expr& e) { return fn(FnKind::Ln, e); }
Expr atan(const Expr& e) { return fn(FnKind::Atan, e); }
Expr sin(const Expr& e) { return fn(FnKind::Sin, e); }
Expr cos(const Expr& e) { return fn(FnKind::Cos, e); }

Expr apply(const std::string& name, std::vector<int> slots, std::vector<Expr> args)
{
    std::sort(slots.begin(), slots.end());
    for (int s : slots)
        if (s < 1 || s > int(args.size()))
            throw std::invalid_argument("derivative slot out of range for " + name);
    Node n{Kind::Apply};
    n.name = name;
    n.slots = std::move(slots);
    n.args = std::move(args);
    return make(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) { return add({a, b}); }
Expr operator-(const Expr& a) { return mul({num(Scalar(-1)), a}); }
Expr operator-(const Expr& a, const Expr& b) { return add({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return mul({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return mul({a, pow(b, -1L)}); }

bool structurally_equal(const Expr& a, const Expr& b)
{
    if (a.get() == b.get())
        return true;
    const Node& x = a.node();
    const Node& y = b.node();
    if (x.hash != y.hash || x.kind != y.kind || x.args.size() != y.args.size())
        return false;
    switch (x.kind) {
    case Kind::Num:
        if (x.value != y.value)
            return false;
        break;
    case Kind::Var:
        if (x.var != y.var)
            return false;
        break;
    case Kind::Param:
        if (x.name != y.name)
            return false;
        break;
    case Kind::Pow:
        if (x.exponent != y.exponent)
            return false;
        break;
    case Kind::Fn:
        if (x.fn != y.fn)
            return false;
        break;
    case Kind::Apply:
        if (x.name != y.name || x.slots != y.slots)
            return false;
        break;
    default:
        break;
    }
    for (std::size_t i = 0; i < x.args.size(); ++i)
        if (!structurally_equal(x.args[i], y.args[i]))
            return false;
    return true;
}

int compare(const Expr& a, const Expr& b)
{
    if (structurally_equal(a, b))
        return 0;
    std::string sa = to_string(a), sb = to_string(b);
    return sa < sb ? -1 : (sa > sb ? 1 : 0);
}

namespace {

void print(const Expr& e, std::string& out)
{
    const Node& n = e.node();
    switch (n.kind) {
    case Kind::Num:
        out += n.value.str();
        return;
    case Kind::Var:
        out += "x";
        out += char('0' + n.var);
        return;
    case Kind::Param:
        out += n.name;
        return;
    case Kind::Add:
    case Kind::Mul:
        out += n.kind == Kind::Add ? "(+" : "(*";
        for (const auto& a : n.args) {
            out += ' ';
            print(a, out);
        }
        out += ')';
        return;
    case Kind::Pow:
        out += "(^ ";
        print(n.args[0], out);
        out += ' ';
        out += n.exponent.get_str();
        out += ')';
        return;
    case Kind::Fn:
        out += '(';
        out += fn_name(n.fn);
        out += ' ';
        print(n.args[0], out);
        out += ')';
        return;
    case Kind::Apply:
        out += '(';
        if (!n.slots.empty()) {
            out += "D (";
            for (std::size_t i = 0; i < n.slots.size(); ++i) {
                if (i)
                    out += ' ';
                out += std::to_string(n.slots[i]);
            }
            out += ") ";
        }
        out += n.name;
        for (const auto& a : n.args) {
            out += ' ';
            print(a, out);
        }
        out += ')';
        return;
    }
}

}  // namespace

std::string to_string(const Expr& e)
{
    std::string s;
    print(e, s);
    return s;
}

namespace {

using Memo = std::unordered_map<const Node*, Expr>;

// Derivative along a single symbol; leaf(n) gives the derivative of a Var/Param leaf.
Expr derive(const Expr& e, const std::function<Expr(const Node&)>& leaf, Memo& memo)
{
    auto it = memo.find(e.get());
    if (it != memo.end())
        return it->second;
    const Node& n = e.node();
    Expr r;
    switch (n.kind) {
    case Kind::Num:
        r = Expr(0L);
        break;
    case Kind::Var:
    case Kind::Param:
        r = leaf(n);
        break;
    case Kind::Add: {
        std::vector<Expr> t;
        for (const auto& a : n.args)
            t.push_back(derive(a, leaf, memo));
        r = add(std::move(t));
        break;
    }
    case Kind::Mul: {
        std::vector<Expr> t;
        for (std::size_t i = 0; i < n.args.size(); ++i) {
            Expr d = derive(n.args[i], leaf, memo);
            if (d.is_zero())
                continue;
            std::vector<Expr> f;
            for (std::size_t j = 0; j < n.args.size(); ++j)
                f.push_back(j == i ? d : n.args[j]);
            t.push_back(mul(std::move(f)));
        }
        r = add(std::move(t));
        break;
    }
    case Kind::Pow: {
        Expr d = derive(n.args[0], leaf, memo);
        if (d.is_zero()) {
            r = Expr(0L);
            break;
        }
        r = mul({num(Scalar(n.exponent)), pow(n.args[0], n.exponent - 1), d});
        break;
    }
    case Kind::Fn: {
        const Expr& u = n.args[0];
        Expr d = derive(u, leaf, memo);
        if (d.is_zero()) {
            r = Expr(0L);
            break;
        }
        switch (n.fn) {
        case FnKind::Exp: r = e * d; break;
        case FnKind::Ln: r = d / u; break;
        case FnKind::Atan: r = d / (Expr(1L) + u * u); break;
        case FnKind::Sin: r = cos(u) * d; break;
        case FnKind::Cos: r = -(sin(u) * d); break;
        }
        break;
    }
    case Kind::Apply: {
        std::vector<Expr> t;
        for (std::size_t k = 0; k < n.args.size(); ++k) {
            Expr d = derive(n.args[k], leaf, memo);
            if (d.is_zero())
                continue;
            std::vector<int> s = n.slots;
            s.push_back(int(k) + 1);
            t.push_back(apply(n.name, std::move(s), n.args) * d);
        }
        r = add(std::move(t));
        break;
    }
    }
    memo.emplace(e.get(), r);
    return r;
}

}  // namespace

Expr diff(const Expr& e, int axis)
{
    if (axis < 1 || axis > 3)
        throw std::invalid_argument("spatial axis must be 1, 2 or 3");
    Memo memo;
    return derive(
        e, [axis](const Node& n) { return Expr(n.kind == Kind::Var && n.var == axis ? 1L : 0L); },
        memo);
}

Expr diff_param(const Expr& e, const std::string& name)
{
    Memo memo;
    return derive(
        e,
        [&name](const Node& n) {
            return Expr(n.kind == Kind::Param && n.name == name ? 1L : 0L);
        },
        memo);
}

Expr gradient_dot(const std::array<Expr, 3>& v, const Expr& e)
{
    std::vector<Expr> t;
    for (int a = 0; a < 3; ++a)
        if (!v[a].is_zero())
            t.push_back(v[a] * diff(e, a + 1));
    return add(std::move(t));
}

namespace {

Expr rebuild(const Node& n, std::vector<Expr> args)
{
    switch (n.kind) {
    case Kind::Add: return add(std::move(args));
    case Kind::Mul: return mul(std::move(args));
    case Kind::Pow: return pow(args[0], n.exponent);
    case Kind::Fn: return fn(n.fn, args[0]);
    case Kind::Apply: return apply(n.name, n.slots, std::move(args));
    default: break;
    }
    throw std::logic_error("rebuild on leaf");
}

Expr transform(const Expr& e, const std::function<bool(const Expr&, Expr&)>& hook, Memo& memo)
{
    auto it = memo.find(e.get());
    if (it != memo.end())
        return it->second;
    Expr r;
    if (!hook(e, r)) {
        const Node& n = e.node();
        if (n.args.empty()) {
            r = e;
        } else {
            std::vector<Expr> a;
            bool same = true;
            for (const auto& c : n.args) {
                a.push_back(transform(c, hook, memo));
                same = same && a.back().get() == c.get();
            }
            r = same ? e : rebuild(n, std::move(a));
        }
    }
    memo.emplace(e.get(), r);
    return r;
}

}  // namespace

Expr substitute_vars(const Expr& e, const std::array<Expr, 3>& images)
{
    Memo memo;
    return transform(
        e,
        [&](const Expr& s, Expr& out) {
            if (s.kind() != Kind::Var)
                return false;
            out = images[s.node().var - 1];
            return true;
        },
        memo);
}

Expr substitute_params(const Expr& e, const std::map<std::string, Expr>& images)
{
    Memo memo;
    return transform(
        e,
        [&](const Expr& s, Expr& out) {
            if (s.kind() != Kind::Param)
                return false;
            auto it = images.find(s.node().name);
            if (it == images.end())
                return false;
            out = it->second;
            return true;
        },
        memo);
}

Expr substitute_function(const Expr& e, const std::string& name, const FunctionDef& def)
{
    Memo memo;
    std::function<bool(const Expr&, Expr&)> hook;
    hook = [&](const Expr& s, Expr& out) {
        if (s.kind() != Kind::Apply || s.node().name != name)
            return false;
        const Node& n = s.node();
        if (n.args.size() != def.args.size())
            throw std::invalid_argument("arity mismatch substituting " + name);
        Expr body = def.body;
        for (int slot : n.slots)
            body = diff_param(body, def.args[slot - 1]);
        std::map<std::string, Expr> img;
        for (std::size_t k = 0; k < n.args.size(); ++k)
            img[def.args[k]] = transform(n.args[k], hook, memo);
        out = substitute_params(body, img);
        return true;
    };
    return transform(e, hook, memo);
}

namespace {

void visit(const Expr& e, const std::function<void(const Node&)>& f,
           std::unordered_set<const Node*>& seen)
{
    if (!seen.insert(e.get()).second)
        return;
    f(e.node());
    for (const auto& a : e.node().args)
        visit(a, f, seen);
}

void visit(const Expr& e, const std::function<void(const Node&)>& f)
{
    std::unordered_set<const Node*> seen;
    visit(e, f, seen);
}

}  // namespace

std::set<std::string> free_params(const Expr& e)
{
    std::set<std::string> s;
    visit(e, [&](const Node& n) {
        if (n.kind == Kind::Param)
            s.insert(n.name);
    });
    return s;
}

std::set<std::string> function_names(const Expr& e)
{
    std::set<std::string> s;
    visit(e, [&](const Node& n) {
        if (n.kind == Kind::Apply)
            s.insert(n.name);
    });
    return s;
}

bool has_abstract(const Expr& e)
{
    bool found = false;
    visit(e, [&](const Node& n) { found = found || n.kind == Kind::Apply; });
    return found;
}

bool has_transcendental(const Expr& e)
{
    bool found = false;
    visit(e, [&](const Node& n) { found = found || n.kind == Kind::Fn; });
    return found;
}

bool has_vars(const Expr& e)
{
    bool found = false;
    visit(e, [&](const Node& n) { found = found || n.kind == Kind::Var; });
    return found;
}

std::size_t tree_size(const Expr& e)
{
    std::size_t c = 0;
    visit(e, [&](const Node&) { ++c; });
    return c;
}

Expr r2() { return add({pow(x(1), 2L), pow(x(2), 2L), pow(x(3), 2L)}); }
Expr rt2() { return add({pow(x(1), 2L), pow(x(2), 2L)}); }

}  // namespace pdm::sym
