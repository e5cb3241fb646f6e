#include "pdm/algebra.hpp"
#include "pdm/zero.hpp"

#include <cmath>
#include <unordered_map>

namespace pdm::sym {

namespace {

using cplx = std::complex<double>;

class Evaluator {
public:
    Evaluator(const Point& p, std::function<double(const std::string&)> param,
              std::function<double(const Expr&)> app)
        : p_(p), param_(std::move(param)), app_(std::move(app))
    {
    }

    cplx run(const Expr& e)
    {
        auto it = memo_.find(e.get());
        if (it != memo_.end())
            return it->second;
        cplx v = compute(e);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw EvalError("non-finite value", to_string(e));
        scale_ = std::max(scale_, std::abs(v));
        memo_.emplace(e.get(), v);
        return v;
    }

    double scale() const { return scale_; }

private:
    const Point& p_;
    std::function<double(const std::string&)> param_;
    std::function<double(const Expr&)> app_;
    std::unordered_map<const Node*, cplx> memo_;
    double scale_ = 0.0;

    static bool is_real(cplx v) { return std::abs(v.imag()) <= 1e-14 * (1.0 + std::abs(v.real())); }

    cplx compute(const Expr& e)
    {
        const Node& n = e.node();
        switch (n.kind) {
        case Kind::Num:
            return n.value.to_complex();
        case Kind::Var:
            return p_[n.var - 1];
        case Kind::Param:
            return param_(n.name);
        case Kind::Add: {
            cplx s = 0;
            for (const auto& a : n.args)
                s += run(a);
            return s;
        }
        case Kind::Mul: {
            cplx s = 1;
            for (const auto& a : n.args)
                s *= run(a);
            return s;
        }
        case Kind::Pow: {
            cplx b = run(n.args[0]);
            if (n.exponent.get_den() == 1) {
                long k = n.exponent.get_num().get_si();
                if (b == cplx(0) && k < 0)
                    throw EvalError("division by zero", to_string(n.args[0]));
                cplx r = 1, x = k < 0 ? 1.0 / b : b;
                for (long m = std::labs(k); m; m >>= 1) {
                    if (m & 1)
                        r *= x;
                    x *= x;
                }
                return r;
            }
            if (!is_real(b) || b.real() < 0 || (b.real() == 0 && sgn(n.exponent) < 0))
                throw EvalError("fractional power of non-positive base", to_string(n.args[0]));
            return std::pow(b.real(), n.exponent.get_d());
        }
        case Kind::Fn: {
            cplx u = run(n.args[0]);
            switch (n.fn) {
            case FnKind::Exp: return std::exp(u);
            case FnKind::Sin: return std::sin(u);
            case FnKind::Cos: return std::cos(u);
            case FnKind::Ln:
                if (!is_real(u) || u.real() <= 0)
                    throw EvalError("logarithm of non-positive value", to_string(n.args[0]));
                return std::log(u.real());
            case FnKind::Atan:
                if (!is_real(u))
                    throw EvalError("arctangent of complex value", to_string(n.args[0]));
                return std::atan(u.real());
            }
            break;
        }
        case Kind::Apply:
            return app_(e);
        }
        throw std::logic_error("unreachable");
    }
};

std::uint64_t fnv(std::uint64_t h, const std::string& s)
{
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

std::string application_key(const Expr& a)
{
    const Node& n = a.node();
    std::vector<Expr> args;
    for (const auto& x : n.args)
        args.push_back(normalize(x));
    return to_string(apply(n.name, n.slots, std::move(args)));
}

cplx eval_complex(const Expr& e, const Point& p, const std::map<std::string, double>& params,
                  const std::map<std::string, double>& abstract_values)
{
    Evaluator ev(
        p,
        [&](const std::string& name) {
            auto it = params.find(name);
            if (it == params.end())
                throw EvalError("unassigned parameter", name);
            return it->second;
        },
        [&](const Expr& app) {
            auto it = abstract_values.find(to_string(app));
            if (it == abstract_values.end())
                it = abstract_values.find(application_key(app));
            if (it == abstract_values.end())
                throw EvalError("unassigned abstract value", to_string(app));
            return it->second;
        });
    return ev.run(e);
}

double eval(const Expr& e, const Point& p, const std::map<std::string, double>& params,
            const std::map<std::string, double>& abstract_values)
{
    cplx v = eval_complex(e, p, params, abstract_values);
    if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v.real())))
        throw EvalError("value is not real", to_string(e));
    return v.real();
}

const char* ZeroStatus::name() const
{
    switch (kind) {
    case ProvedZero: return "ProvedZero";
    case NumericZero: return "NumericZero";
    case NonZero: return "NonZero";
    case Inconclusive: return "Inconclusive";
    }
    return "?";
}

const char* ZeroStatus::tier() const
{
    switch (kind) {
    case ProvedZero: return "symbolic";
    case NumericZero: return "numeric";
    default: return "none";
    }
}

ZeroStatus numeric_zero_test(const Expr& e, const ZeroTestPolicy& policy)
{
    ZeroStatus st;
    auto names = free_params(e);
    std::unordered_map<const Node*, std::uint64_t> app_hash;
    SplitMix rng(policy.seed);
    int valid = 0, attempts = 0;
    const int max_attempts = 4 * std::max(policy.points, 1) + 16;
    std::string last_error;
    while (valid < policy.points && attempts < max_attempts) {
        ++attempts;
        Point p;
        for (auto& c : p) {
            std::uint64_t u = rng.next();
            long steps = std::lround((policy.coord_max - policy.coord_min) * 1000.0);
            double mag = policy.coord_min + double(u % std::uint64_t(steps + 1)) / 1000.0;
            c = (u >> 63) ? -mag : mag;
        }
        double rr = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        std::map<std::string, double> pv;
        for (const auto& nm : names)
            pv[nm] = policy.param_min + (policy.param_max - policy.param_min) * rng.uniform();
        if (std::abs(rr - 1.0) < policy.unit_sphere_gap)
            continue;
        std::uint64_t salt = fnv(1469598103934665603ULL ^ policy.seed, std::to_string(attempts));
        try {
            Evaluator ev(
                p, [&](const std::string& nm) { return pv.at(nm); },
                [&](const Expr& app) {
                    auto it = app_hash.find(app.get());
                    std::uint64_t h;
                    if (it == app_hash.end()) {
                        h = fnv(1469598103934665603ULL, application_key(app));
                        app_hash.emplace(app.get(), h);
                    } else {
                        h = it->second;
                    }
                    SplitMix g(h ^ salt);
                    return 2.0 * g.uniform() - 1.0;
                });
            cplx v = ev.run(e);
            double res = std::abs(v) / (1.0 + ev.scale());
            ++valid;
            st.max_residual = std::max(st.max_residual, res);
            if (std::abs(v) > policy.tol * (1.0 + ev.scale())) {
                st.kind = ZeroStatus::NonZero;
                st.points = valid;
                st.witness = p;
                st.witness_params = pv;
                st.value = v;
                return st;
            }
        } catch (const EvalError& err) {
            last_error = err.what();
        }
    }
    st.points = valid;
    if (valid < policy.points) {
        st.kind = ZeroStatus::Inconclusive;
        st.reason = valid == 0 ? "no sample point could be evaluated: " + last_error
                               : "only " + std::to_string(valid) + " evaluable sample points";
        return st;
    }
    st.kind = ZeroStatus::NumericZero;
    return st;
}

ZeroStatus is_zero(const Expr& e, const ZeroTestPolicy& policy)
{
    if (proved_zero(e)) {
        ZeroStatus st;
        st.kind = ZeroStatus::ProvedZero;
        return st;
    }
    return numeric_zero_test(e, policy);
}

}  // namespace pdm::sym
