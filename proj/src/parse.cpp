#include "pdm/expr.hpp"

#include <cctype>

namespace pdm::sym {

const Defs& builtin_defs()
{
    static const Defs defs = [] {
        Defs d;
        d["r2"] = r2();
        d["rt2"] = rt2();
        d["r"] = sqrt(r2());
        d["rt"] = sqrt(rt2());
        d["phi"] = atan(x(2) / x(1));
        for (int a = 1; a <= 3; ++a)
            d["s" + std::to_string(a)] = Expr(2L) * pow(x(a), 2L) - r2();
        return d;
    }();
    return defs;
}

namespace {

struct Tok {
    enum Type { LParen, RParen, Atom, End } type;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}
    Tok next()
    {
        while (i_ < s_.size() && (std::isspace((unsigned char)s_[i_]) || s_[i_] == ';')) {
            if (s_[i_] == ';')
                while (i_ < s_.size() && s_[i_] != '\n')
                    ++i_;
            else
                ++i_;
        }
        if (i_ >= s_.size())
            return {Tok::End, "", i_};
        char c = s_[i_];
        if (c == '(')
            return {Tok::LParen, "(", i_++};
        if (c == ')')
            return {Tok::RParen, ")", i_++};
        std::size_t b = i_;
        while (i_ < s_.size() && !std::isspace((unsigned char)s_[i_]) && s_[i_] != '(' &&
               s_[i_] != ')')
            ++i_;
        return {Tok::Atom, s_.substr(b, i_ - b), b};
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
};

bool parse_number(const std::string& t, mpq_class& out)
{
    std::size_t k = 0;
    bool neg = false;
    if (k < t.size() && (t[k] == '-' || t[k] == '+')) {
        neg = t[k] == '-';
        ++k;
    }
    if (k >= t.size() || !(std::isdigit((unsigned char)t[k])))
        return false;
    std::size_t slash = t.find('/'), dot = t.find('.');
    std::string body = t.substr(k);
    try {
        if (slash != std::string::npos) {
            mpz_class n(t.substr(k, slash - k)), d(t.substr(slash + 1));
            if (d == 0)
                return false;
            out = mpq_class(n, d);
        } else if (dot != std::string::npos) {
            std::string ip = t.substr(k, dot - k), fp = t.substr(dot + 1);
            mpz_class scale = 1;
            for (std::size_t j = 0; j < fp.size(); ++j)
                scale *= 10;
            mpz_class n(ip.empty() ? "0" : ip);
            mpz_class f(fp.empty() ? "0" : fp);
            out = mpq_class(n * scale + f, scale);
        } else {
            out = mpq_class(mpz_class(body));
        }
    } catch (const std::invalid_argument&) {
        return false;
    }
    out.canonicalize();
    if (neg)
        out = -out;
    return true;
}

class Parser {
public:
    Parser(const std::string& s, const Defs& extra) : lex_(s), extra_(extra) { adv(); }

    Expr parse_all()
    {
        Expr e = expr();
        if (tok_.type != Tok::End)
            fail("trailing input");
        return e;
    }

private:
    Lexer lex_;
    const Defs& extra_;
    Tok tok_;

    void adv() { tok_ = lex_.next(); }
    [[noreturn]] void fail(const std::string& m) const
    {
        throw ParseError(m + " at offset " + std::to_string(tok_.pos));
    }

    Expr atom(const std::string& t)
    {
        mpq_class q;
        if (parse_number(t, q))
            return num(Scalar(q));
        if (t.size() == 2 && t[0] == 'x' && t[1] >= '1' && t[1] <= '3')
            return var(t[1] - '0');
        if (t == "I")
            return imag_unit();
        if (t[0] == '$') {
            std::string name = t.substr(1);
            auto it = extra_.find(name);
            if (it != extra_.end())
                return it->second;
            const Defs& b = builtin_defs();
            auto jt = b.find(name);
            if (jt != b.end())
                return jt->second;
            fail("unknown definition $" + name);
        }
        if (!(std::isalpha((unsigned char)t[0]) || t[0] == '_'))
            fail("bad token '" + t + "'");
        return param(t);
    }

    mpq_class number_arg()
    {
        if (tok_.type != Tok::Atom)
            fail("expected a number");
        mpq_class q;
        if (!parse_number(tok_.text, q))
            fail("expected a number, got '" + tok_.text + "'");
        adv();
        return q;
    }

    std::vector<Expr> rest()
    {
        std::vector<Expr> v;
        while (tok_.type != Tok::RParen) {
            if (tok_.type == Tok::End)
                fail("unbalanced parentheses");
            v.push_back(expr());
        }
        adv();
        return v;
    }

    Expr expr()
    {
        if (tok_.type == Tok::Atom) {
            std::string t = tok_.text;
            adv();
            return atom(t);
        }
        if (tok_.type != Tok::LParen)
            fail("expected expression");
        adv();
        if (tok_.type != Tok::Atom)
            fail("expected operator");
        std::string head = tok_.text;
        adv();
        if (head == "+")
            return add(rest());
        if (head == "*")
            return mul(rest());
        if (head == "-") {
            auto a = rest();
            if (a.empty())
                fail("'-' needs arguments");
            if (a.size() == 1)
                return -a[0];
            std::vector<Expr> t{a[0]};
            for (std::size_t i = 1; i < a.size(); ++i)
                t.push_back(-a[i]);
            return add(std::move(t));
        }
        if (head == "/") {
            auto a = rest();
            if (a.size() != 2)
                fail("'/' takes two arguments");
            return a[0] / a[1];
        }
        if (head == "^") {
            Expr b = expr();
            mpq_class q = number_arg();
            if (tok_.type != Tok::RParen)
                fail("'^' takes two arguments");
            adv();
            return pow(b, q);
        }
        if (head == "complex") {
            mpq_class re = number_arg(), im = number_arg();
            if (tok_.type != Tok::RParen)
                fail("'complex' takes two numbers");
            adv();
            return num(Scalar(re, im));
        }
        if (head == "D") {
            if (tok_.type != Tok::LParen)
                fail("expected slot list after D");
            adv();
            std::vector<int> slots;
            while (tok_.type == Tok::Atom) {
                mpq_class q;
                if (!parse_number(tok_.text, q) || q.get_den() != 1 || q < 1)
                    fail("bad derivative slot");
                slots.push_back(int(q.get_num().get_si()));
                adv();
            }
            if (tok_.type != Tok::RParen)
                fail("unterminated slot list");
            adv();
            if (tok_.type != Tok::Atom)
                fail("expected function name");
            std::string name = tok_.text;
            adv();
            auto a = rest();
            try {
                return apply(name, std::move(slots), std::move(a));
            } catch (const std::invalid_argument& e) {
                fail(e.what());
            }
        }
        static const std::map<std::string, FnKind> fns = {
            {"exp", FnKind::Exp}, {"ln", FnKind::Ln},   {"atan", FnKind::Atan},
            {"sin", FnKind::Sin}, {"cos", FnKind::Cos},
        };
        auto f = fns.find(head);
        if (f != fns.end() || head == "sqrt") {
            auto a = rest();
            if (a.size() != 1)
                fail("'" + head + "' takes one argument");
            return head == "sqrt" ? sqrt(a[0]) : fn(f->second, a[0]);
        }
        if (!(std::isalpha((unsigned char)head[0]) || head[0] == '_'))
            fail("bad operator '" + head + "'");
        return apply(head, {}, rest());
    }
};

}  // namespace

Expr parse(const std::string& text, const Defs& extra)
{
    Parser p(text, extra);
    return p.parse_all();
}

}  // namespace pdm::sym
