#pragma once

#include <initializer_list>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ksym/chart.hpp"
#include "ksym/rational.hpp"

namespace ksym {

enum class FuncKind : std::uint8_t { Sin, Cos, Exp, Log, Sqrt };

std::string to_string(FuncKind f);

/// A scalar symbol: a chart coordinate, optionally decorated with up to two
/// formal total derivatives D_a (stored sorted, so D_1 D_2 == D_2 D_1).
/// Plain chart variables have d1 == d2 == 0; a first-order jet symbol
/// D_a(phi^i) is {q(i), a, 0}; a second-order one D_a D_b(phi^i) is
/// {q(i), a, b} with a <= b.
struct Symbol {
    VarRef var;
    std::uint8_t d1 = 0;
    std::uint8_t d2 = 0;

    Symbol() = default;
    Symbol(VarRef v) : var(v) {}
    Symbol(VarRef v, int da, int db = 0) : var(v) {
        if (da > db) std::swap(da, db);
        if (da == 0) {
            d1 = static_cast<std::uint8_t>(db);
        } else {
            d1 = static_cast<std::uint8_t>(da);
            d2 = static_cast<std::uint8_t>(db);
        }
    }

    int order() const { return (d1 ? 1 : 0) + (d2 ? 1 : 0); }

    friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

enum class PrintStyle : std::uint8_t {
    Chart,  ///< q[1], v[1,2], p[2,1], w[1,1], u[1,1,2]
    Field,  ///< phi[1], phi[1,2], psi[2,1], d/dx[1](phi[1])
};

std::string to_string(const Symbol& s, PrintStyle style = PrintStyle::Chart);

/// Immutable symbolic expression tree over chart variables, named parameters
/// and exact rational constants. Handles share structure; all operations are
/// pure functions, so expressions are safe to use from multiple threads.
class Expr {
  public:
    enum class Kind : std::uint8_t { Const, Param, Var, Sum, Prod, Pow, Func };

    struct Node;

    Expr();  // the zero expression

    Kind kind() const;
    const Rational& value() const;        // Const
    const std::string& param() const;     // Param
    const Symbol& symbol() const;         // Var
    const std::vector<Expr>& kids() const;  // Sum, Prod
    Expr base() const;                    // Pow
    long exponent() const;                // Pow
    FuncKind func() const;                // Func
    Expr child() const;                   // Func

    bool is_zero() const;
    bool is_one() const;
    bool is_const() const;

    friend bool same_node(const Expr& a, const Expr& b) { return a.node_ == b.node_; }

  private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
    friend struct ExprFactory;
};

// ---- constructors (with light canonicalization: constant folding,
//      sum/product flattening, trivial power rules) ----
Expr constant(const Rational& r);
Expr constant(long v);
Expr parameter(const std::string& name);
Expr variable(const Symbol& s);
inline Expr variable(const VarRef& v) { return variable(Symbol(v)); }
Expr add(std::vector<Expr> terms);
Expr add(const Expr& a, const Expr& b);
Expr sub(const Expr& a, const Expr& b);
Expr mul(std::vector<Expr> factors);
Expr mul(const Expr& a, const Expr& b);
Expr div(const Expr& a, const Expr& b);
Expr pow(const Expr& base, long e);
Expr neg(const Expr& e);
Expr apply(FuncKind f, const Expr& arg);

inline Expr operator+(const Expr& a, const Expr& b) { return add(a, b); }
inline Expr operator-(const Expr& a, const Expr& b) { return sub(a, b); }
inline Expr operator*(const Expr& a, const Expr& b) { return mul(a, b); }
inline Expr operator-(const Expr& a) { return neg(a); }

/// Exact partial derivative with respect to a symbol (a distinct symbol
/// differentiates to zero) or a named parameter.
Expr differentiate(const Expr& e, const Symbol& s);
Expr differentiate(const Expr& e, const VarRef& v);
Expr differentiate_param(const Expr& e, const std::string& name);

/// Point at which expressions are evaluated; must cover every free symbol
/// and parameter of the evaluated expression.
struct Assignment {
    std::map<Symbol, double> vars;
    std::map<std::string, double> params;

    void set(const VarRef& v, double x) { vars[Symbol(v)] = x; }
    void set(const Symbol& s, double x) { vars[s] = x; }
    void set_param(const std::string& n, double x) { params[n] = x; }
};

struct EvalOptions {
    /// Guarded mode also rejects near-singular points (used by the sampled
    /// equivalence check so that resampling kicks in before the values blow
    /// up): |denominator| or log/sqrt arguments below `guard_eps`.
    bool guarded = false;
    double guard_eps = 1e-3;
};

double evaluate(const Expr& e, const Assignment& a, const EvalOptions& opt = {});

void collect_symbols(const Expr& e, std::set<Symbol>& out);
void collect_params(const Expr& e, std::set<std::string>& out);
std::set<Symbol> free_symbols(const Expr& e);
std::set<std::string> free_params(const Expr& e);

/// True when any free symbol of `e` has one of the given roles
/// (derivative decorations ignored).
bool uses_role(const Expr& e, std::initializer_list<Role> roles);

Expr substitute(const Expr& e, const std::map<Symbol, Expr>& map);
Expr substitute_params(const Expr& e, const std::map<std::string, Expr>& map);
Expr substitute_params(const Expr& e, const std::map<std::string, Rational>& values);

/// Structural infix printing (used as fallback by the canonical printer and
/// for non-polynomial expressions). Output re-parses to an equivalent tree.
std::string to_string(const Expr& e, PrintStyle style = PrintStyle::Chart);

}  // namespace ksym
