#include "ksym/lifts.hpp"

namespace ksym {

VectorFieldOnQ::VectorFieldOnQ(int n_, int k_, std::vector<Expr> comps)
    : n(n_), k(k_), components(std::move(comps)) {
    if (static_cast<int>(components.size()) != n)
        throw ChartMismatchError("vector field needs exactly n components");
    for (const auto& c : components)
        if (uses_role(c, {Role::X, Role::V, Role::P, Role::W, Role::VV, Role::U}))
            throw ChartMismatchError("vector field components must use position variables only");
}

std::vector<Expr> complete_lift(const VectorFieldOnQ& z, Bundle target) {
    if (target != Bundle::Tangent && target != Bundle::Cotangent && target != Bundle::Pontryagin)
        throw ChartMismatchError("complete lift targets T1kQ, (T1k)*Q or M");
    Chart chart = make_chart(z.n, z.k, target);
    std::vector<Expr> out(chart.size());
    for (int s = 0; s < chart.size(); ++s) {
        const VarRef& c = chart.coord(s);
        switch (c.role) {
            case Role::Q:
                out[s] = z.components[c.i - 1];
                break;
            case Role::V: {
                // v-slot (i,a): v^j_a dZ^i/dq^j
                std::vector<Expr> terms;
                for (int j = 1; j <= z.n; ++j)
                    terms.push_back(mul(variable(VarRef::v(j, c.a)),
                                        differentiate(z.components[c.i - 1], VarRef::q(j))));
                out[s] = add(std::move(terms));
                break;
            }
            case Role::P: {
                // p-slot (a,i): -p^a_j dZ^j/dq^i
                std::vector<Expr> terms;
                for (int j = 1; j <= z.n; ++j)
                    terms.push_back(mul(variable(VarRef::p(c.a, j)),
                                        differentiate(z.components[j - 1], VarRef::q(c.i))));
                out[s] = neg(add(std::move(terms)));
                break;
            }
            default:
                throw ChartMismatchError("unexpected slot in complete lift");
        }
    }
    return out;
}

}  // namespace ksym
