#include <cmath>

#include "doctest.h"
#include "ksym/equivalence.hpp"
#include "ksym/mechanics.hpp"
#include "ksym/parser.hpp"
#include "ksym/rng.hpp"
#include "test_util.hpp"

using namespace ksym;
using testutil::equiv;

namespace {

LagrangianProblem navier_problem() {
    Chart chart = make_chart(2, 2, Bundle::Tangent);
    return LagrangianProblem(2, 2, {{"lam", Rational(1)}, {"mu", Rational(1)}},
                             parse(testutil::kNavierL, chart));
}

LagrangianProblem cosserat_problem() {
    Chart chart = make_chart(7, 2, Bundle::Tangent);
    std::map<std::string, Rational> params = {{"rho", Rational(1)},
                                              {"alpha", Rational(1)},
                                              {"beta", Rational(1)},
                                              {"kk", Rational(1)},
                                              {"rr", Rational(1)}};
    return LagrangianProblem(7, 2, params, parse(testutil::kCosseratL, chart));
}

// Independent oracle: plain recursive cofactor expansion without any of the
// library's memoized machinery.
Expr cofactor_det(const std::vector<std::vector<Expr>>& m) {
    const int dim = static_cast<int>(m.size());
    if (dim == 1) return m[0][0];
    std::vector<Expr> terms;
    for (int c = 0; c < dim; ++c) {
        std::vector<std::vector<Expr>> sub;
        for (int r = 1; r < dim; ++r) {
            std::vector<Expr> row;
            for (int c2 = 0; c2 < dim; ++c2)
                if (c2 != c) row.push_back(m[r][c2]);
            sub.push_back(std::move(row));
        }
        Expr t = mul(m[0][c], cofactor_det(sub));
        terms.push_back(c % 2 ? neg(t) : t);
    }
    return add(std::move(terms));
}

}  // namespace

TEST_CASE("legendre_map: Navier momenta match the printed derivative list") {
    LagrangianProblem P = navier_problem();
    Chart chart = make_chart(2, 2, Bundle::Tangent);
    LegendreMap fl = legendre_map(P);
    CHECK(equiv(fl.at(1, 1), parse("(lam+2*mu)*v[1,1]+(lam+mu)*v[2,2]", chart)));
    CHECK(equiv(fl.at(2, 1), parse("mu*v[1,2]", chart)));
    CHECK(equiv(fl.at(1, 2), parse("mu*v[2,1]", chart)));
    CHECK(equiv(fl.at(2, 2), parse("(lam+2*mu)*v[2,2]+(lam+mu)*v[1,1]", chart)));
}

TEST_CASE("legendre_map: identity for the isotropic quadratic Lagrangian") {
    Chart chart = make_chart(2, 2, Bundle::Tangent);
    Expr L = parse("(v[1,1]^2+v[2,1]^2+v[1,2]^2+v[2,2]^2)/2", chart);
    LagrangianProblem P(2, 2, {}, L);
    LegendreMap fl = legendre_map(P);
    for (int a = 1; a <= 2; ++a)
        for (int i = 1; i <= 2; ++i) CHECK(equiv(fl.at(a, i), variable(VarRef::v(i, a))));
}

TEST_CASE("legendre_map: Cosserat zero momenta") {
    LagrangianProblem P = cosserat_problem();
    LegendreMap fl = legendre_map(P);
    for (int i = 4; i <= 7; ++i) CHECK(fl.at(1, i).is_zero());
    CHECK(fl.at(2, 6).is_zero());
    CHECK(fl.at(2, 7).is_zero());
    Chart chart = make_chart(7, 2, Bundle::Tangent);
    CHECK(equiv(fl.at(1, 1), parse("rho*v[1,1]", chart)));
    CHECK(equiv(fl.at(2, 3), parse("-beta*v[3,2]", chart)));
}

TEST_CASE("velocity_hessian: identity Lagrangian is regular everywhere") {
    Chart chart = make_chart(2, 2, Bundle::Tangent);
    LagrangianProblem P(2, 2, {}, parse("(v[1,1]^2+v[2,1]^2+v[1,2]^2+v[2,2]^2)/2", chart));
    Assignment at;
    for (const auto& c : chart.coords()) at.set(c, 0.3);
    RegularityReport rep = velocity_hessian(P, at);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            CHECK(equiv(rep.hessian[r][c], constant(r == c ? 1 : 0)));
    REQUIRE(rep.determinant.has_value());
    CHECK(equiv(*rep.determinant, constant(1)));
    CHECK(*rep.regular);
    CHECK(*rep.rank == 4);
}

TEST_CASE("velocity_hessian: Navier determinant equals mu^3 (2 lam + 3 mu)") {
    LagrangianProblem P = navier_problem();
    Chart chart = make_chart(2, 2, Bundle::Tangent);
    Assignment at;
    for (const auto& c : chart.coords()) at.set(c, 0.0);
    RegularityReport rep = velocity_hessian(P, at);
    REQUIRE(rep.determinant.has_value());
    auto res = equivalent(*rep.determinant, parse("mu^3*(2*lam+3*mu)", chart));
    CHECK(res.equal);
    CHECK(res.certificate == Certificate::Polynomial);
    // Independent brute-force cofactor oracle.
    CHECK(equiv(*rep.determinant, cofactor_det(rep.hessian)));
    CHECK(*rep.regular);  // at lam = mu = 1

    // Hessian symmetry as expressions.
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) CHECK(equiv(rep.hessian[r][c], rep.hessian[c][r]));
}

TEST_CASE("velocity_hessian: Cosserat Lagrangian is singular at random points") {
    LagrangianProblem P = cosserat_problem();
    Chart chart = make_chart(7, 2, Bundle::Tangent);
    Rng rng(99);
    for (int t = 0; t < 10; ++t) {
        Assignment at;
        for (const auto& c : chart.coords()) at.set(c, rng.uniform(-2, 2));
        RegularityReport rep = velocity_hessian(P, at);
        REQUIRE(rep.rank.has_value());
        CHECK_FALSE(*rep.regular);
        CHECK(*rep.rank < 14);
        REQUIRE(rep.determinant.has_value());
        CHECK(rep.determinant->is_zero());
    }
}

TEST_CASE("generalized_energy: free particle and homogeneous quadratics") {
    Chart c11 = make_chart(1, 1, Bundle::Pontryagin);
    LagrangianProblem P(1, 1, {}, parse("v[1,1]^2/2", c11));
    CHECK(equiv(generalized_energy(P, EnergyFlavor::Pontryagin),
                parse("p[1,1]*v[1,1]-v[1,1]^2/2", c11)));
    CHECK(equiv(generalized_energy(P, EnergyFlavor::Lagrangian), parse("v[1,1]^2/2", c11)));

    // Navier L is homogeneous quadratic: E_L = 2L - L = L.
    LagrangianProblem nav = navier_problem();
    CHECK(equiv(generalized_energy(nav, EnergyFlavor::Lagrangian), nav.lagrangian));
}

TEST_CASE("generalized_energy: pontryagin energy restricts to E_L along FL") {
    LagrangianProblem P = navier_problem();
    LegendreMap fl = legendre_map(P);
    Expr e_pontryagin = generalized_energy(P, EnergyFlavor::Pontryagin);
    std::map<Symbol, Expr> onto_fl;
    for (int a = 1; a <= 2; ++a)
        for (int i = 1; i <= 2; ++i) onto_fl.emplace(Symbol(VarRef::p(a, i)), fl.at(a, i));
    CHECK(equiv(substitute(e_pontryagin, onto_fl),
                generalized_energy(P, EnergyFlavor::Lagrangian)));
}

TEST_CASE("hamiltonian_from_lagrangian: classical free cases") {
    Chart c11 = make_chart(1, 1, Bundle::Pontryagin);
    LagrangianProblem P1(1, 1, {}, parse("v[1,1]^2/2", c11));
    CHECK(equiv(hamiltonian_from_lagrangian(P1), parse("p[1,1]^2/2", c11)));

    Chart c12 = make_chart(1, 2, Bundle::Pontryagin);
    LagrangianProblem P2(1, 2, {}, parse("(v[1,1]^2+v[1,2]^2)/2", c12));
    CHECK(equiv(hamiltonian_from_lagrangian(P2), parse("(p[1,1]^2+p[2,1]^2)/2", c12)));

    CHECK_THROWS_AS(hamiltonian_from_lagrangian(cosserat_problem()), NotHyperregularError);
    Chart c11t = make_chart(1, 1, Bundle::Tangent);
    LagrangianProblem quartic(1, 1, {}, parse("v[1,1]^4", c11t));
    CHECK_THROWS_AS(hamiltonian_from_lagrangian(quartic), UnsupportedFormError);
}

TEST_CASE("hamiltonian round trip for hyperregular quadratic Lagrangians") {
    Rng rng(42);
    for (int trial = 0; trial < 8; ++trial) {
        int n = rng.uniform_int(1, 2), k = rng.uniform_int(1, 2);
        const int dim = n * k;
        Chart chart = make_chart(n, k, Bundle::Pontryagin);
        // Diagonally dominant rational quadratic form plus linear terms.
        std::vector<Expr> vs;
        for (int a = 1; a <= k; ++a)
            for (int i = 1; i <= n; ++i) vs.push_back(variable(VarRef::v(i, a)));
        std::vector<Expr> terms;
        for (int r = 0; r < dim; ++r) {
            terms.push_back(mul(constant(Rational(dim + rng.uniform_int(1, 3))),
                                pow(vs[r], 2)));
            for (int c = r + 1; c < dim; ++c)
                terms.push_back(mul(constant(Rational(rng.uniform_int(-1, 1))),
                                    mul(vs[r], vs[c])));
            terms.push_back(mul(constant(Rational(rng.uniform_int(-2, 2))), vs[r]));
        }
        terms.push_back(mul(constant(Rational(rng.uniform_int(-2, 2))),
                            variable(VarRef::q(1))));
        LagrangianProblem P(n, k, {}, add(std::move(terms)));

        Expr H = hamiltonian_from_lagrangian(P);
        LegendreMap fl = legendre_map(P);
        std::map<Symbol, Expr> onto_fl;
        for (int a = 1; a <= k; ++a)
            for (int i = 1; i <= n; ++i) onto_fl.emplace(Symbol(VarRef::p(a, i)), fl.at(a, i));

        // H o FL reproduces E_L.
        Expr el = generalized_energy(P, EnergyFlavor::Lagrangian);
        auto round = equivalent(substitute(H, onto_fl), el);
        CHECK(round.equal);
        CHECK(round.certificate == Certificate::Polynomial);

        // dH/dp^a_i o FL = v^i_a.
        for (int a = 1; a <= k; ++a)
            for (int i = 1; i <= n; ++i) {
                Expr dh = differentiate(H, VarRef::p(a, i));
                CHECK(equiv(substitute(dh, onto_fl), variable(VarRef::v(i, a))));
            }
    }
}

TEST_CASE("constraint rank check") {
    // Cosserat constraint forms have rank 2 generically.
    ConstraintSet cs;
    cs.m = 2;
    Chart chart = make_chart(7, 2, Bundle::Tangent);
    cs.phi = {parse("v[1,1]+rr*v[3,1]*v[2,2]", chart), parse("v[2,1]-rr*v[3,1]*v[1,2]", chart)};
    cs.eta.assign(2, std::vector<std::vector<Expr>>(2, std::vector<Expr>(7, constant(0))));
    cs.eta[0][0][0] = constant(1);
    cs.eta[0][0][2] = parse("rr*v[2,2]", chart);
    cs.eta[1][0][1] = constant(1);
    cs.eta[1][0][2] = parse("-rr*v[1,2]", chart);
    cs.validate(7, 2);
    cs.check_rank(7, 2, {{"rr", Rational(1)}});  // should not throw

    // Duplicated rows are rank deficient.
    ConstraintSet bad = cs;
    bad.eta[1] = bad.eta[0];
    bad.phi[1] = bad.phi[0];
    CHECK_THROWS_AS(bad.check_rank(7, 2, {{"rr", Rational(1)}}), RankDeficientError);
}
