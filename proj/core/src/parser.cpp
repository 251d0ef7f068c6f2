#include "ksym/parser.hpp"

#include <cctype>

namespace ksym {

namespace {

class Parser {
  public:
    Parser(const std::string& text, const Chart& chart, const ParseOptions& opts)
        : s_(text), chart_(chart), opts_(opts) {}

    Expr run() {
        Expr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;
    const Chart& chart_;
    ParseOptions opts_;

    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool lookahead(const char* lit) {
        skip_ws();
        std::size_t p = pos_;
        for (const char* c = lit; *c; ++c, ++p)
            if (p >= s_.size() || s_[p] != *c) return false;
        return true;
    }

    Expr expr() {
        Expr e = term();
        for (;;) {
            if (eat('+'))
                e = add(e, term());
            else if (eat('-'))
                e = sub(e, term());
            else
                return e;
        }
    }

    Expr term() {
        Expr e = factor();
        for (;;) {
            if (eat('*'))
                e = mul(e, factor());
            else if (eat('/'))
                e = div(e, factor());
            else
                return e;
        }
    }

    Expr factor() {
        bool negated = eat('-');
        Expr a = atom();
        if (eat('^')) a = pow(a, integer());
        return negated ? neg(a) : a;
    }

    long integer() {
        skip_ws();
        bool negd = false;
        if (pos_ < s_.size() && s_[pos_] == '-') {
            negd = true;
            ++pos_;
        }
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected integer");
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            v = v * 10 + (s_[pos_++] - '0');
        return negd ? -v : v;
    }

    Expr atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            if (opts_.field_mode && lookahead("d/dx[")) return jet();
            return ident();
        }
        fail("expected a number, identifier, variable or '('");
    }

    Expr number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
            ++pos_;
        // exponent part
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    ++pos_;
            } else {
                pos_ = save;  // 'e' belongs to a following identifier
            }
        }
        try {
            return constant(parse_rational(s_.substr(start, pos_ - start)));
        } catch (const FormatError& err) {
            pos_ = start;
            fail(err.what());
        }
    }

    std::string ident_name() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }

    int index() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected index");
        int v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            v = v * 10 + (s_[pos_++] - '0');
        return v;
    }

    VarRef varref(const std::string& name) {
        expect('[');
        VarRef r;
        if (name == "q" || name == "x") {
            int i = index();
            r = name == "q" ? VarRef::q(i) : VarRef::x(i);
        } else if (name == "v" || name == "w" || name == "p") {
            int i1 = index();
            expect(',');
            int i2 = index();
            if (name == "v") r = VarRef::v(i1, i2);
            if (name == "w") r = VarRef::w(i1, i2);
            if (name == "p") r = VarRef::p(i1, i2);  // printed order p[a,i]
        } else if (name == "u") {
            int i1 = index();
            expect(',');
            int i2 = index();
            expect(',');
            int i3 = index();
            r = VarRef::u(i1, i2, i3);
        } else {
            fail("unknown variable '" + name + "'");
        }
        expect(']');
        chart_.check_bounds(r);
        return r;
    }

    /// phi[i] -> q(i), phi[i,a] -> v(i,a), psi[a,i] -> p(a,i)
    VarRef field_var(const std::string& name) {
        expect('[');
        int i1 = index();
        int i2 = -1;
        if (eat(',')) i2 = index();
        expect(']');
        VarRef r;
        if (name == "phi")
            r = i2 < 0 ? VarRef::q(i1) : VarRef::v(i1, i2);
        else
            r = i2 < 0 ? (fail("psi needs two indices"), VarRef{}) : VarRef::p(i1, i2);
        chart_.check_bounds(r);
        return r;
    }

    /// d/dx[a]( <symbol> ) with at most two nested applications.
    Expr jet() {
        std::vector<int> dirs;
        while (lookahead("d/dx[")) {
            pos_ += 5;  // past "d/dx["
            int a = index();
            expect(']');
            if (a < 1 || a > chart_.k())
                throw IndexError("derivative direction " + std::to_string(a) + " out of 1..k");
            dirs.push_back(a);
            expect('(');
        }
        if (dirs.size() > 2) fail("at most two total derivatives are supported");
        skip_ws();
        std::string name = ident_name();
        VarRef base;
        if (name == "phi" || name == "psi")
            base = field_var(name);
        else if (name == "q" || name == "v" || name == "p")
            base = varref(name);
        else
            fail("total derivative must be applied directly to a field symbol");
        if (base.role != Role::Q && dirs.size() > 1)
            fail("second-order jets exist only for position fields");
        for (std::size_t j = 0; j < dirs.size(); ++j) expect(')');
        Symbol sym(base, dirs.size() > 0 ? dirs[dirs.size() - 1] : 0,
                   dirs.size() > 1 ? dirs[0] : 0);
        return variable(sym);
    }

    Expr ident() {
        std::size_t start = pos_;
        std::string name = ident_name();
        bool bracket = pos_ < s_.size() && s_[pos_] == '[';
        bool paren = peek() == '(';
        if (bracket) {
            if (name == "q" || name == "x" || name == "v" || name == "w" || name == "p" ||
                name == "u")
                return variable(varref(name));
            if (opts_.field_mode && (name == "phi" || name == "psi"))
                return variable(field_var(name));
            if (opts_.allow_dq && name == "dq") {
                expect('[');
                int i = index();
                expect(']');
                chart_.check_bounds(VarRef::q(i));
                return parameter("dq#" + std::to_string(i));
            }
            pos_ = start;
            fail("unknown indexed symbol '" + name + "'");
        }
        if (paren) {
            FuncKind f;
            if (name == "sin")
                f = FuncKind::Sin;
            else if (name == "cos")
                f = FuncKind::Cos;
            else if (name == "exp")
                f = FuncKind::Exp;
            else if (name == "log")
                f = FuncKind::Log;
            else if (name == "sqrt")
                f = FuncKind::Sqrt;
            else {
                pos_ = start;
                fail("unknown function '" + name + "'");
            }
            expect('(');
            Expr arg = expr();
            expect(')');
            return apply(f, arg);
        }
        return parameter(name);
    }
};

}  // namespace

Expr parse(const std::string& text, const Chart& chart, const ParseOptions& opts) {
    return Parser(text, chart, opts).run();
}

Expr parse_field(const std::string& text, int n, int k) {
    ParseOptions o;
    o.field_mode = true;
    return parse(text, make_chart(n, k, Bundle::IteratedM), o);
}

}  // namespace ksym
