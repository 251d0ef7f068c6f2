#include "ksym/polynomial.hpp"

#include <algorithm>
#include <array>

namespace ksym {

namespace {

// Printed index tuple, padded; the comparison order documented on PolyKey.
std::array<int, 3> printed_indices(const VarRef& v) {
    switch (v.role) {
        case Role::X: return {v.a, 0, 0};
        case Role::Q: return {v.i, 0, 0};
        case Role::P: return {v.a, v.i, 0};
        case Role::V:
        case Role::W: return {v.i, v.a, 0};
        case Role::VV:
        case Role::U: return {v.i, v.a, v.b};
    }
    return {0, 0, 0};
}

}  // namespace

bool poly_key_less(const PolyKey& a, const PolyKey& b) {
    if (a.is_param != b.is_param) return a.is_param;  // parameters first
    if (a.is_param) return a.name < b.name;
    if (a.sym.var.role != b.sym.var.role) return a.sym.var.role < b.sym.var.role;
    auto ia = printed_indices(a.sym.var), ib = printed_indices(b.sym.var);
    if (ia != ib) return ia < ib;
    return std::make_pair(a.sym.d1, a.sym.d2) < std::make_pair(b.sym.d1, b.sym.d2);
}

long Monomial::degree() const {
    long d = 0;
    for (const auto& [k, e] : factors) d += e;
    return d;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.factors.reserve(a.factors.size() + b.factors.size());
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() && j < b.factors.size()) {
        if (a.factors[i].first == b.factors[j].first) {
            out.factors.emplace_back(a.factors[i].first, a.factors[i].second + b.factors[j].second);
            ++i, ++j;
        } else if (poly_key_less(a.factors[i].first, b.factors[j].first)) {
            out.factors.push_back(a.factors[i++]);
        } else {
            out.factors.push_back(b.factors[j++]);
        }
    }
    while (i < a.factors.size()) out.factors.push_back(a.factors[i++]);
    while (j < b.factors.size()) out.factors.push_back(b.factors[j++]);
    return out;
}

bool MonoGrlexDesc::operator()(const Monomial& a, const Monomial& b) const {
    long da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    // Lexicographic on the exponent vectors over the ordered key union:
    // the earlier key with the larger exponent wins.
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() && j < b.factors.size()) {
        const auto& [ka, ea] = a.factors[i];
        const auto& [kb, eb] = b.factors[j];
        if (ka == kb) {
            if (ea != eb) return ea > eb;
            ++i, ++j;
        } else if (poly_key_less(ka, kb)) {
            return true;  // a has positive exponent on an earlier key
        } else {
            return false;
        }
    }
    if (i < a.factors.size()) return true;
    return false;
}

Poly::Poly(const Rational& c) {
    if (c != 0) terms_.emplace(Monomial{}, c);
}

Poly::Poly(const PolyKey& k) {
    Monomial m;
    m.factors.emplace_back(k, 1);
    terms_.emplace(std::move(m), Rational(1));
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.factors.empty());
}

Rational Poly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    return terms_.begin()->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) out.add_term(mono_mul(ma, mb), ca * cb);
    return out;
}

Poly Poly::operator-() const {
    Poly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Poly Poly::pow(long e) const {
    Poly acc{Rational(1)};
    Poly base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Poly Poly::scaled(const Rational& c) const {
    Poly out;
    if (c == 0) return out;
    for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
    return out;
}

std::optional<Poly> expr_to_poly(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Const: return Poly(e.value());
        case Expr::Kind::Param: return Poly(PolyKey::param(e.param()));
        case Expr::Kind::Var: return Poly(PolyKey::var(e.symbol()));
        case Expr::Kind::Sum: {
            Poly acc;
            for (const auto& k : e.kids()) {
                auto p = expr_to_poly(k);
                if (!p) return std::nullopt;
                acc += *p;
            }
            return acc;
        }
        case Expr::Kind::Prod: {
            Poly acc{Rational(1)};
            for (const auto& k : e.kids()) {
                auto p = expr_to_poly(k);
                if (!p) return std::nullopt;
                acc = acc * *p;
            }
            return acc;
        }
        case Expr::Kind::Pow: {
            if (e.exponent() < 0) return std::nullopt;
            auto p = expr_to_poly(e.base());
            if (!p) return std::nullopt;
            return p->pow(e.exponent());
        }
        case Expr::Kind::Func: return std::nullopt;
    }
    return std::nullopt;
}

Expr poly_to_expr(const Poly& p) {
    std::vector<Expr> terms;
    for (const auto& [m, c] : p.terms()) {
        std::vector<Expr> fs;
        fs.push_back(constant(c));
        for (const auto& [k, e] : m.factors) {
            Expr leaf = k.is_param ? parameter(k.name) : variable(k.sym);
            fs.push_back(pow(leaf, e));
        }
        terms.push_back(mul(std::move(fs)));
    }
    return add(std::move(terms));
}

std::string to_string(const Poly& p, PrintStyle style) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational a = c;
        if (a < 0) {
            out += "-";
            a = -a;
        } else if (!first) {
            out += "+";
        }
        std::string factors;
        for (const auto& [k, e] : m.factors) {
            if (!factors.empty()) factors += "*";
            factors += k.is_param ? k.name : to_string(k.sym, style);
            if (e != 1) factors += "^" + std::to_string(e);
        }
        if (factors.empty()) {
            out += to_string(a);
        } else {
            if (a != 1) out += to_string(a) + "*";
            out += factors;
        }
        first = false;
    }
    return out;
}

std::string canonical_string(const Expr& e, PrintStyle style) {
    if (auto p = expr_to_poly(e)) return to_string(*p, style);
    return to_string(e, style);
}

}  // namespace ksym
