#pragma once

#include <vector>

#include "ksym/chart.hpp"
#include "ksym/expr.hpp"

namespace ksym {

/// Vector field Z = Z^i d/dq^i on the configuration space: components are
/// expressions in the position variables (and parameters) only.
struct VectorFieldOnQ {
    int n = 0;
    int k = 0;
    std::vector<Expr> components;  // Z^1 .. Z^n

    VectorFieldOnQ() = default;
    VectorFieldOnQ(int n_, int k_, std::vector<Expr> comps);  // validates q-only
};

/// Complete lift of Z to the requested bundle, returned as one component
/// expression per chart slot (in chart enumeration order):
///   Tangent:    Z^i on d/dq^i,  v^j_a dZ^i/dq^j       on d/dv^i_a
///   Cotangent:  Z^i on d/dq^i,  -p^a_j dZ^j/dq^i      on d/dp^a_i
///   Pontryagin: both of the above on the combined chart
std::vector<Expr> complete_lift(const VectorFieldOnQ& z, Bundle target);

}  // namespace ksym
