#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ksym/expr.hpp"

namespace ksym {

/// One indeterminate of the polynomial ring: a named parameter or a chart
/// symbol (possibly a jet symbol). Parameters sort before chart symbols,
/// by name; symbols sort by role in the order (x, q, v, p, w, vv, u), then
/// by their printed index tuple lexicographically, then by derivative
/// decorations.
struct PolyKey {
    bool is_param = false;
    std::string name;  // when is_param
    Symbol sym;        // otherwise

    static PolyKey param(std::string n) {
        PolyKey k;
        k.is_param = true;
        k.name = std::move(n);
        return k;
    }
    static PolyKey var(const Symbol& s) {
        PolyKey k;
        k.sym = s;
        return k;
    }

    friend bool operator==(const PolyKey&, const PolyKey&) = default;
};

bool poly_key_less(const PolyKey& a, const PolyKey& b);

/// Monomial: sorted (key, exponent) pairs, exponents > 0.
struct Monomial {
    std::vector<std::pair<PolyKey, int>> factors;

    long degree() const;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial mono_mul(const Monomial& a, const Monomial& b);

/// Graded lexicographic, higher monomials first (leading term at begin()).
struct MonoGrlexDesc {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse distributed polynomial over the rationals in canonical form.
class Poly {
  public:
    Poly() = default;
    explicit Poly(const Rational& c);
    explicit Poly(const PolyKey& k);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // requires is_constant()
    std::size_t term_count() const { return terms_.size(); }

    const std::map<Monomial, Rational, MonoGrlexDesc>& terms() const { return terms_; }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly pow(long e) const;
    Poly scaled(const Rational& c) const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    void add_term(const Monomial& m, const Rational& c);

  private:
    std::map<Monomial, Rational, MonoGrlexDesc> terms_;
};

/// Conversion to normal form; nullopt when the expression is not polynomial
/// (transcendental functions or negative powers).
std::optional<Poly> expr_to_poly(const Expr& e);

Expr poly_to_expr(const Poly& p);

/// Deterministic printing of the normal form, descending graded-lex.
std::string to_string(const Poly& p, PrintStyle style = PrintStyle::Chart);

/// Normal-form-first printing: polynomial expressions print expanded and
/// sorted; everything else falls back to the structural printer. Output
/// re-parses to an equivalent expression.
std::string canonical_string(const Expr& e, PrintStyle style = PrintStyle::Chart);

}  // namespace ksym
