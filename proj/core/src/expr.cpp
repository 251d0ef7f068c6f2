#include "ksym/expr.hpp"

#include <algorithm>
#include <cmath>

namespace ksym {

std::string to_string(FuncKind f) {
    switch (f) {
        case FuncKind::Sin: return "sin";
        case FuncKind::Cos: return "cos";
        case FuncKind::Exp: return "exp";
        case FuncKind::Log: return "log";
        case FuncKind::Sqrt: return "sqrt";
    }
    return "?";
}

std::string to_string(const Symbol& s, PrintStyle style) {
    std::string core;
    if (style == PrintStyle::Field) {
        switch (s.var.role) {
            case Role::Q:
                core = "phi[" + std::to_string(s.var.i) + "]";
                break;
            case Role::V:
                core = "phi[" + std::to_string(s.var.i) + "," + std::to_string(s.var.a) + "]";
                break;
            case Role::P:
                core = "psi[" + std::to_string(s.var.a) + "," + std::to_string(s.var.i) + "]";
                break;
            default: core = to_string(s.var); break;
        }
    } else {
        core = to_string(s.var);
    }
    if (s.d2) core = "d/dx[" + std::to_string(s.d2) + "](" + core + ")";
    if (s.d1) core = "d/dx[" + std::to_string(s.d1) + "](" + core + ")";
    return core;
}

struct Expr::Node {
    Kind kind = Kind::Const;
    Rational value;      // Const
    std::string param;   // Param
    Symbol sym;          // Var
    std::vector<Expr> kids;  // Sum, Prod; kids[0] is the Pow base / Func argument
    long expo = 0;       // Pow
    FuncKind fn = FuncKind::Sin;  // Func

    Node() : value(0) {}
};

struct ExprFactory {
    static Expr make(std::shared_ptr<const Expr::Node> n) { return Expr(std::move(n)); }
};

namespace {

Expr make_node(Expr::Node&& n) {
    return ExprFactory::make(std::make_shared<const Expr::Node>(std::move(n)));
}

const Expr& zero_expr() {
    static const Expr z = constant(0);
    return z;
}

}  // namespace

Expr::Expr() { *this = zero_expr(); }

Expr::Kind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }
const std::string& Expr::param() const { return node_->param; }
const Symbol& Expr::symbol() const { return node_->sym; }
const std::vector<Expr>& Expr::kids() const { return node_->kids; }
Expr Expr::base() const { return node_->kids.front(); }
long Expr::exponent() const { return node_->expo; }
FuncKind Expr::func() const { return node_->fn; }
Expr Expr::child() const { return node_->kids.front(); }

bool Expr::is_const() const { return node_->kind == Kind::Const; }
bool Expr::is_zero() const { return is_const() && node_->value == 0; }
bool Expr::is_one() const { return is_const() && node_->value == 1; }

Expr constant(const Rational& r) {
    Expr::Node n;
    n.kind = Expr::Kind::Const;
    n.value = r;
    return make_node(std::move(n));
}

Expr constant(long v) { return constant(Rational(v)); }

Expr parameter(const std::string& name) {
    Expr::Node n;
    n.kind = Expr::Kind::Param;
    n.param = name;
    return make_node(std::move(n));
}

Expr variable(const Symbol& s) {
    Expr::Node n;
    n.kind = Expr::Kind::Var;
    n.sym = s;
    return make_node(std::move(n));
}

Expr add(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    Rational c(0);
    for (auto& t : terms) {
        if (t.kind() == Expr::Kind::Const) {
            c += t.value();
        } else if (t.kind() == Expr::Kind::Sum) {
            for (const auto& k : t.kids()) {
                if (k.kind() == Expr::Kind::Const)
                    c += k.value();
                else
                    flat.push_back(k);
            }
        } else {
            flat.push_back(std::move(t));
        }
    }
    if (c != 0) flat.push_back(constant(c));
    if (flat.empty()) return constant(0);
    if (flat.size() == 1) return flat[0];
    Expr::Node n;
    n.kind = Expr::Kind::Sum;
    n.kids = std::move(flat);
    return make_node(std::move(n));
}

Expr add(const Expr& a, const Expr& b) { return add(std::vector<Expr>{a, b}); }

Expr sub(const Expr& a, const Expr& b) { return add(a, neg(b)); }

Expr mul(std::vector<Expr> factors) {
    std::vector<Expr> flat;
    Rational c(1);
    for (auto& f : factors) {
        if (f.kind() == Expr::Kind::Const) {
            c *= f.value();
        } else if (f.kind() == Expr::Kind::Prod) {
            for (const auto& k : f.kids()) {
                if (k.kind() == Expr::Kind::Const)
                    c *= k.value();
                else
                    flat.push_back(k);
            }
        } else {
            flat.push_back(std::move(f));
        }
    }
    if (c == 0) return constant(0);
    if (c != 1) flat.insert(flat.begin(), constant(c));
    if (flat.empty()) return constant(1);
    if (flat.size() == 1) return flat[0];
    Expr::Node n;
    n.kind = Expr::Kind::Prod;
    n.kids = std::move(flat);
    return make_node(std::move(n));
}

Expr mul(const Expr& a, const Expr& b) { return mul(std::vector<Expr>{a, b}); }

Expr div(const Expr& a, const Expr& b) {
    if (b.kind() == Expr::Kind::Const) {
        if (b.value() == 0) throw DomainError("division by zero constant");
        return mul(a, constant(Rational(1) / b.value()));
    }
    return mul(a, pow(b, -1));
}

Expr pow(const Expr& base, long e) {
    if (e == 0) return constant(1);
    if (e == 1) return base;
    if (base.kind() == Expr::Kind::Const) return constant(rational_pow(base.value(), e));
    if (base.kind() == Expr::Kind::Pow) return pow(base.base(), base.exponent() * e);
    Expr::Node n;
    n.kind = Expr::Kind::Pow;
    n.kids.push_back(base);
    n.expo = e;
    return make_node(std::move(n));
}

Expr neg(const Expr& e) { return mul(constant(-1), e); }

Expr apply(FuncKind f, const Expr& arg) {
    Expr::Node n;
    n.kind = Expr::Kind::Func;
    n.fn = f;
    n.kids.push_back(arg);
    return make_node(std::move(n));
}

namespace {

template <typename MatchLeaf>
Expr diff_impl(const Expr& e, const MatchLeaf& leaf) {
    switch (e.kind()) {
        case Expr::Kind::Const: return constant(0);
        case Expr::Kind::Param:
        case Expr::Kind::Var: return leaf(e);
        case Expr::Kind::Sum: {
            std::vector<Expr> parts;
            parts.reserve(e.kids().size());
            for (const auto& k : e.kids()) parts.push_back(diff_impl(k, leaf));
            return add(std::move(parts));
        }
        case Expr::Kind::Prod: {
            std::vector<Expr> terms;
            const auto& ks = e.kids();
            for (std::size_t i = 0; i < ks.size(); ++i) {
                Expr d = diff_impl(ks[i], leaf);
                if (d.is_zero()) continue;
                std::vector<Expr> fs;
                fs.reserve(ks.size());
                for (std::size_t j = 0; j < ks.size(); ++j) fs.push_back(i == j ? d : ks[j]);
                terms.push_back(mul(std::move(fs)));
            }
            return add(std::move(terms));
        }
        case Expr::Kind::Pow: {
            Expr d = diff_impl(e.base(), leaf);
            if (d.is_zero()) return d;
            return mul({constant(e.exponent()), pow(e.base(), e.exponent() - 1), d});
        }
        case Expr::Kind::Func: {
            Expr d = diff_impl(e.child(), leaf);
            if (d.is_zero()) return d;
            Expr outer;
            switch (e.func()) {
                case FuncKind::Sin: outer = apply(FuncKind::Cos, e.child()); break;
                case FuncKind::Cos: outer = neg(apply(FuncKind::Sin, e.child())); break;
                case FuncKind::Exp: outer = e; break;
                case FuncKind::Log: outer = pow(e.child(), -1); break;
                case FuncKind::Sqrt: outer = mul(constant(Rational(1) / 2), pow(e, -1)); break;
            }
            return mul(outer, d);
        }
    }
    return constant(0);
}

}  // namespace

Expr differentiate(const Expr& e, const Symbol& s) {
    return diff_impl(e, [&](const Expr& leaf) {
        if (leaf.kind() == Expr::Kind::Var && leaf.symbol() == s) return constant(1);
        return constant(0);
    });
}

Expr differentiate(const Expr& e, const VarRef& v) { return differentiate(e, Symbol(v)); }

Expr differentiate_param(const Expr& e, const std::string& name) {
    return diff_impl(e, [&](const Expr& leaf) {
        if (leaf.kind() == Expr::Kind::Param && leaf.param() == name) return constant(1);
        return constant(0);
    });
}

double evaluate(const Expr& e, const Assignment& a, const EvalOptions& opt) {
    switch (e.kind()) {
        case Expr::Kind::Const: return to_double(e.value());
        case Expr::Kind::Param: {
            auto it = a.params.find(e.param());
            if (it == a.params.end())
                throw MissingSymbolError("no value for parameter '" + e.param() + "'");
            return it->second;
        }
        case Expr::Kind::Var: {
            auto it = a.vars.find(e.symbol());
            if (it == a.vars.end())
                throw MissingSymbolError("no value for variable " + to_string(e.symbol()));
            return it->second;
        }
        case Expr::Kind::Sum: {
            double s = 0;
            for (const auto& k : e.kids()) s += evaluate(k, a, opt);
            return s;
        }
        case Expr::Kind::Prod: {
            double p = 1;
            for (const auto& k : e.kids()) p *= evaluate(k, a, opt);
            return p;
        }
        case Expr::Kind::Pow: {
            double b = evaluate(e.base(), a, opt);
            long n = e.exponent();
            if (n < 0) {
                if (b == 0) throw DomainError("division by zero");
                if (opt.guarded && std::abs(b) < opt.guard_eps)
                    throw DomainError("near-singular denominator");
            }
            return std::pow(b, static_cast<double>(n));
        }
        case Expr::Kind::Func: {
            double x = evaluate(e.child(), a, opt);
            switch (e.func()) {
                case FuncKind::Sin: return std::sin(x);
                case FuncKind::Cos: return std::cos(x);
                case FuncKind::Exp: return std::exp(x);
                case FuncKind::Log:
                    if (x <= 0) throw DomainError("log of nonpositive value");
                    if (opt.guarded && x < opt.guard_eps) throw DomainError("log near zero");
                    return std::log(x);
                case FuncKind::Sqrt:
                    if (x < 0) throw DomainError("sqrt of negative value");
                    return std::sqrt(x);
            }
        }
    }
    throw Error("unreachable expression kind");
}

void collect_symbols(const Expr& e, std::set<Symbol>& out) {
    switch (e.kind()) {
        case Expr::Kind::Var: out.insert(e.symbol()); break;
        case Expr::Kind::Sum:
        case Expr::Kind::Prod:
            for (const auto& k : e.kids()) collect_symbols(k, out);
            break;
        case Expr::Kind::Pow: collect_symbols(e.base(), out); break;
        case Expr::Kind::Func: collect_symbols(e.child(), out); break;
        default: break;
    }
}

void collect_params(const Expr& e, std::set<std::string>& out) {
    switch (e.kind()) {
        case Expr::Kind::Param: out.insert(e.param()); break;
        case Expr::Kind::Sum:
        case Expr::Kind::Prod:
            for (const auto& k : e.kids()) collect_params(k, out);
            break;
        case Expr::Kind::Pow: collect_params(e.base(), out); break;
        case Expr::Kind::Func: collect_params(e.child(), out); break;
        default: break;
    }
}

std::set<Symbol> free_symbols(const Expr& e) {
    std::set<Symbol> s;
    collect_symbols(e, s);
    return s;
}

std::set<std::string> free_params(const Expr& e) {
    std::set<std::string> s;
    collect_params(e, s);
    return s;
}

bool uses_role(const Expr& e, std::initializer_list<Role> roles) {
    for (const auto& s : free_symbols(e))
        for (Role r : roles)
            if (s.var.role == r) return true;
    return false;
}

Expr substitute(const Expr& e, const std::map<Symbol, Expr>& map) {
    switch (e.kind()) {
        case Expr::Kind::Var: {
            auto it = map.find(e.symbol());
            return it == map.end() ? e : it->second;
        }
        case Expr::Kind::Sum: {
            std::vector<Expr> ks;
            ks.reserve(e.kids().size());
            for (const auto& k : e.kids()) ks.push_back(substitute(k, map));
            return add(std::move(ks));
        }
        case Expr::Kind::Prod: {
            std::vector<Expr> ks;
            ks.reserve(e.kids().size());
            for (const auto& k : e.kids()) ks.push_back(substitute(k, map));
            return mul(std::move(ks));
        }
        case Expr::Kind::Pow: return pow(substitute(e.base(), map), e.exponent());
        case Expr::Kind::Func: return apply(e.func(), substitute(e.child(), map));
        default: return e;
    }
}

Expr substitute_params(const Expr& e, const std::map<std::string, Expr>& map) {
    switch (e.kind()) {
        case Expr::Kind::Param: {
            auto it = map.find(e.param());
            return it == map.end() ? e : it->second;
        }
        case Expr::Kind::Sum: {
            std::vector<Expr> ks;
            for (const auto& k : e.kids()) ks.push_back(substitute_params(k, map));
            return add(std::move(ks));
        }
        case Expr::Kind::Prod: {
            std::vector<Expr> ks;
            for (const auto& k : e.kids()) ks.push_back(substitute_params(k, map));
            return mul(std::move(ks));
        }
        case Expr::Kind::Pow: return pow(substitute_params(e.base(), map), e.exponent());
        case Expr::Kind::Func: return apply(e.func(), substitute_params(e.child(), map));
        default: return e;
    }
}

Expr substitute_params(const Expr& e, const std::map<std::string, Rational>& values) {
    std::map<std::string, Expr> m;
    for (const auto& [k, v] : values) m.emplace(k, constant(v));
    return substitute_params(e, m);
}

namespace {

// Precedence levels for structural printing.
enum Prec { PrecSum = 0, PrecProd = 1, PrecUnary = 2, PrecPow = 3, PrecAtom = 4 };

std::string print_impl(const Expr& e, PrintStyle style, int parent_prec) {
    std::string s;
    int prec = PrecAtom;
    switch (e.kind()) {
        case Expr::Kind::Const: {
            s = to_string(e.value());
            if (e.value() < 0 || !is_integer(e.value())) prec = PrecProd;  // "-3", "1/2"
            break;
        }
        case Expr::Kind::Param: s = e.param(); break;
        case Expr::Kind::Var: s = to_string(e.symbol(), style); break;
        case Expr::Kind::Sum: {
            prec = PrecSum;
            bool first = true;
            for (const auto& k : e.kids()) {
                std::string t = print_impl(k, style, PrecSum);
                if (!first && t.size() && t[0] != '-') s += "+";
                s += t;
                first = false;
            }
            break;
        }
        case Expr::Kind::Prod: {
            prec = PrecProd;
            bool printed_factor = false;
            for (const auto& k : e.kids()) {
                // A leading negative constant prints as a sign.
                if (!printed_factor && s.empty() && k.is_const() && k.value() < 0 &&
                    e.kids().size() > 1) {
                    s += "-";
                    if (k.value() != -1) {
                        s += print_impl(constant(-k.value()), style, PrecProd + 1);
                        printed_factor = true;
                    }
                    continue;
                }
                if (printed_factor) s += "*";
                s += print_impl(k, style, PrecProd + 1);
                printed_factor = true;
            }
            break;
        }
        case Expr::Kind::Pow: {
            if (e.exponent() < 0) {
                // a^-2 is not in the grammar; print as 1/a^2.
                std::string den = print_impl(e.base(), style, PrecPow + 1);
                if (e.exponent() != -1) den += "^" + std::to_string(-e.exponent());
                s = "1/" + den;
                prec = PrecProd;
            } else {
                prec = PrecPow;
                s = print_impl(e.base(), style, PrecPow + 1) + "^" + std::to_string(e.exponent());
            }
            break;
        }
        case Expr::Kind::Func:
            s = to_string(e.func()) + "(" + print_impl(e.child(), style, PrecSum) + ")";
            break;
    }
    if (prec < parent_prec) s = "(" + s + ")";
    return s;
}

}  // namespace

std::string to_string(const Expr& e, PrintStyle style) { return print_impl(e, style, PrecSum); }

}  // namespace ksym
