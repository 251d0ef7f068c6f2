#include <cctype>
#include <cmath>
#include <map>
#include <string>

#include "doctest.h"
#include "ksym/equivalence.hpp"
#include "ksym/parser.hpp"
#include "ksym/polynomial.hpp"
#include "ksym/rng.hpp"
#include "test_util.hpp"

using namespace ksym;
using testutil::equiv;
using testutil::parse_on;

namespace {

// Independent oracle: evaluates an expression string directly with a
// recursive-descent walk over the text, sharing nothing with the library.
class StringEvaluator {
  public:
    StringEvaluator(const std::string& s, const std::map<std::string, double>& env)
        : s_(s), env_(env) {}

    double run() {
        double v = expr();
        if (pos_ != s_.size()) throw std::runtime_error("oracle: trailing input");
        return v;
    }

  private:
    const std::string& s_;
    std::map<std::string, double> env_;
    std::size_t pos_ = 0;

    void ws() {
        while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
    }
    bool eat(char c) {
        ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    double expr() {
        double v = term();
        for (;;) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }
    double term() {
        double v = factor();
        for (;;) {
            if (eat('*'))
                v *= factor();
            else if (eat('/'))
                v /= factor();
            else
                return v;
        }
    }
    double factor() {
        bool negd = eat('-');
        double v = atom();
        if (eat('^')) {
            bool eneg = eat('-');
            double e = atom();
            v = std::pow(v, eneg ? -e : e);
        }
        return negd ? -v : v;
    }
    double atom() {
        ws();
        if (eat('(')) {
            double v = expr();
            if (!eat(')')) throw std::runtime_error("oracle: missing )");
            return v;
        }
        if (pos_ < s_.size() && (std::isdigit((unsigned char)s_[pos_]) || s_[pos_] == '.')) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit((unsigned char)s_[pos_]) || s_[pos_] == '.'))
                ++pos_;
            return std::stod(s_.substr(start, pos_ - start));
        }
        // identifier or var token like v[1,2]
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_'))
            ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '[') {
            while (pos_ < s_.size() && s_[pos_] != ']') ++pos_;
            ++pos_;
        }
        auto it = env_.find(s_.substr(start, pos_ - start));
        if (it == env_.end()) throw std::runtime_error("oracle: unknown token");
        return it->second;
    }
};

// Random polynomial expression strings over a small token pool.
std::string random_poly_string(Rng& rng, int depth = 0) {
    static const char* tokens[] = {"q[1]", "q[2]", "v[1,1]", "v[2,1]", "p[1,2]", "a", "b"};
    if (depth >= 3 || rng.uniform_int(0, 2) == 0) {
        int pick = rng.uniform_int(0, 8);
        if (pick < 7) return tokens[pick];
        return std::to_string(rng.uniform_int(0, 9));
    }
    std::string lhs = random_poly_string(rng, depth + 1);
    std::string rhs = random_poly_string(rng, depth + 1);
    switch (rng.uniform_int(0, 3)) {
        case 0: return "(" + lhs + "+" + rhs + ")";
        case 1: return "(" + lhs + "-" + rhs + ")";
        case 2: return "(" + lhs + ")*(" + rhs + ")";
        default: return "(" + lhs + ")^" + std::to_string(rng.uniform_int(0, 3));
    }
}

Expr random_poly_expr(Rng& rng, const Chart& chart, int depth = 0) {
    std::vector<VarRef> pool;
    for (const auto& c : chart.coords()) pool.push_back(c);
    if (depth >= 3 || rng.uniform_int(0, 2) == 0) {
        int pick = rng.uniform_int(0, static_cast<int>(pool.size()) + 1);
        if (pick < static_cast<int>(pool.size())) return variable(pool[pick]);
        if (pick == static_cast<int>(pool.size())) return parameter("a");
        return constant(rng.uniform_int(-4, 4));
    }
    Expr lhs = random_poly_expr(rng, chart, depth + 1);
    Expr rhs = random_poly_expr(rng, chart, depth + 1);
    switch (rng.uniform_int(0, 3)) {
        case 0: return add(lhs, rhs);
        case 1: return sub(lhs, rhs);
        case 2: return mul(lhs, rhs);
        default: return pow(lhs, rng.uniform_int(0, 3));
    }
}

}  // namespace

TEST_CASE("parse: grammar basics") {
    Chart c11 = make_chart(1, 1, Bundle::Tangent);
    Expr e = parse("v[1,1]^2/2", c11);
    auto p = expr_to_poly(e);
    REQUIRE(p.has_value());
    CHECK(p->term_count() == 1);
    CHECK(equiv(e, mul(constant(Rational(1) / 2), pow(variable(VarRef::v(1, 1)), 2))));

    // Navier-type expression parses with parameters lam, mu.
    Expr nav = parse("(lam/2+mu)*(v[1,1]^2+v[2,2]^2)", make_chart(2, 2, Bundle::Tangent));
    auto params = free_params(nav);
    CHECK(params.count("lam") == 1);
    CHECK(params.count("mu") == 1);

    CHECK_THROWS_AS(parse("v[3,1]", make_chart(2, 2, Bundle::Tangent)), IndexError);
    CHECK_THROWS_AS(parse("v[1,1)+", c11), SyntaxError);
    CHECK_THROWS_AS(parse("", c11), SyntaxError);

    // Byte offsets point at the offending token.
    try {
        parse("1 + %", c11);
        CHECK(false);
    } catch (const SyntaxError& err) {
        CHECK(err.offset == 4);
    }
}

TEST_CASE("parse/print round trip") {
    Chart chart = make_chart(2, 2, Bundle::Pontryagin);
    Rng rng(7);
    for (int t = 0; t < 60; ++t) {
        Expr e = random_poly_expr(rng, chart);
        CHECK(equiv(parse(to_string(e), chart), e));
        CHECK(equiv(parse(canonical_string(e), chart), e));
    }
    // Transcendental expressions round trip through the structural printer.
    Expr f = parse("sin(q[1])*exp(v[1,1])-sqrt(1+q[2]^2)/3", chart);
    CHECK(equiv(parse(to_string(f), chart), f));
}

TEST_CASE("differentiate: Navier momenta") {
    Chart chart = make_chart(2, 2, Bundle::Tangent);
    Expr L = parse(testutil::kNavierL, chart);
    Expr d11 = differentiate(L, VarRef::v(1, 1));
    CHECK(equiv(d11, parse("(lam+2*mu)*v[1,1]+(lam+mu)*v[2,2]", chart)));
    Expr d12 = differentiate(L, VarRef::v(1, 2));
    CHECK(equiv(d12, parse("mu*v[1,2]", chart)));
    CHECK(differentiate(parse("v[1,1]^2", chart), VarRef::q(1)).is_zero());
}

TEST_CASE("differentiate: linearity and commuting mixed partials") {
    Chart chart = make_chart(2, 2, Bundle::Pontryagin);
    Rng rng(13);
    for (int t = 0; t < 50; ++t) {
        Expr e1 = random_poly_expr(rng, chart);
        Expr e2 = random_poly_expr(rng, chart);
        Rational ca(rng.uniform_int(-5, 5), rng.uniform_int(1, 5));
        Rational cb(rng.uniform_int(-5, 5), rng.uniform_int(1, 5));
        VarRef v = chart.coord(rng.uniform_int(0, chart.size() - 1));
        Expr lhs = differentiate(add(mul(constant(ca), e1), mul(constant(cb), e2)), v);
        Expr rhs = add(mul(constant(ca), differentiate(e1, v)),
                       mul(constant(cb), differentiate(e2, v)));
        auto res = equivalent(lhs, rhs);
        CHECK(res.equal);
        CHECK(res.certificate == Certificate::Polynomial);

        VarRef u = chart.coord(rng.uniform_int(0, chart.size() - 1));
        Expr duv = differentiate(differentiate(e1, u), v);
        Expr dvu = differentiate(differentiate(e1, v), u);
        CHECK(equivalent(duv, dvu).equal);
    }
}

TEST_CASE("evaluate: exact arithmetic and domain errors") {
    Chart c11 = make_chart(1, 1, Bundle::Pontryagin);
    // E = p v - L with L = v^2/2 at (v, p) = (2, 3).
    Expr E = parse("p[1,1]*v[1,1] - v[1,1]^2/2", c11);
    Assignment at;
    at.set(VarRef::v(1, 1), 2);
    at.set(VarRef::p(1, 1), 3);
    CHECK(evaluate(E, at) == doctest::Approx(4.0).epsilon(1e-15));

    Chart c22 = make_chart(2, 2, Bundle::Tangent);
    Expr L = parse(testutil::kNavierL, c22);
    Assignment nav;
    for (const auto& c : c22.coords()) nav.set(c, 0.0);
    nav.set(VarRef::v(1, 1), 1.0);
    nav.set_param("lam", 1.0);
    nav.set_param("mu", 1.0);
    CHECK(evaluate(L, nav) == doctest::Approx(1.5).epsilon(1e-15));

    Expr lg = parse("log(q[1])", c11);
    Assignment zero;
    zero.set(VarRef::q(1), 0.0);
    CHECK_THROWS_AS(evaluate(lg, zero), DomainError);
    Assignment missing;
    CHECK_THROWS_AS(evaluate(lg, missing), MissingSymbolError);
}

TEST_CASE("evaluate-parse against the independent string oracle") {
    Rng rng(2024);
    std::map<std::string, double> env;
    Chart chart = make_chart(2, 2, Bundle::Pontryagin);
    for (int t = 0; t < 100; ++t) {
        std::string s = random_poly_string(rng);
        env["q[1]"] = rng.uniform(-2, 2);
        env["q[2]"] = rng.uniform(-2, 2);
        env["v[1,1]"] = rng.uniform(-2, 2);
        env["v[2,1]"] = rng.uniform(-2, 2);
        env["p[1,2]"] = rng.uniform(-2, 2);
        env["a"] = rng.uniform(-2, 2);
        env["b"] = rng.uniform(-2, 2);
        double expected = StringEvaluator(s, env).run();
        Assignment at;
        at.set(VarRef::q(1), env["q[1]"]);
        at.set(VarRef::q(2), env["q[2]"]);
        at.set(VarRef::v(1, 1), env["v[1,1]"]);
        at.set(VarRef::v(2, 1), env["v[2,1]"]);
        at.set(VarRef::p(1, 2), env["p[1,2]"]);
        at.set_param("a", env["a"]);
        at.set_param("b", env["b"]);
        double got = evaluate(parse(s, chart), at);
        CHECK(got == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("equivalent: certificates") {
    Chart chart = make_chart(2, 2, Bundle::Tangent);
    auto r1 = equivalent(parse("(v[1,1]+v[2,2])^2", chart),
                         parse("v[1,1]^2+2*v[1,1]*v[2,2]+v[2,2]^2", chart));
    CHECK(r1.equal);
    CHECK(r1.certificate == Certificate::Polynomial);

    auto r2 = equivalent(parse("sin(q[1])^2+cos(q[1])^2", chart), constant(1));
    CHECK(r2.equal);
    CHECK(r2.certificate == Certificate::Sampled);

    auto r3 = equivalent(parse("v[1,1]", chart), parse("v[1,2]", chart));
    CHECK_FALSE(r3.equal);

    // Polynomial inputs never take the sampled route.
    Rng rng(5);
    for (int t = 0; t < 30; ++t) {
        Expr e = random_poly_expr(rng, chart);
        auto r = equivalent(e, e);
        CHECK(r.equal);
        CHECK(r.certificate == Certificate::Polynomial);
    }
}

TEST_CASE("equivalent: resample policy raises after 8 singular draws") {
    Chart c11 = make_chart(1, 1, Bundle::Base);
    // 1/(sin^2 + cos^2 - 1) evaluates inside the singularity guard at every
    // sample point, so the resample budget runs out.
    Expr sing = parse("1/(sin(q[1])^2+cos(q[1])^2-1)", c11);
    CHECK_THROWS_AS(equivalent(sing, sing), DomainError);
}

TEST_CASE("polynomial normal form ordering is deterministic") {
    Chart chart = make_chart(2, 2, Bundle::Tangent);
    Expr e = parse("mu^3*(2*lam+3*mu)", chart);
    CHECK(canonical_string(e) == "2*lam*mu^3+3*mu^4");
    Expr f = parse("(v[1,1]+1)^2", chart);
    CHECK(canonical_string(f) == "v[1,1]^2+2*v[1,1]+1");
}
