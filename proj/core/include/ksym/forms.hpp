#pragma once

#include <array>
#include <map>
#include <utility>

#include "ksym/chart.hpp"
#include "ksym/expr.hpp"

namespace ksym {

/// Differential form in the coordinate basis of one chart, degree 0, 1 or 2.
/// Degree-2 coefficients are stored on canonically ordered basis pairs
/// dy^I ^ dy^J with slot(I) < slot(J); antisymmetry is normalized away.
struct CoordForm {
    int degree = 0;
    Chart chart;
    Expr scalar;                                       // degree 0
    std::map<VarRef, Expr> one;                        // degree 1
    std::map<std::pair<VarRef, VarRef>, Expr> two;     // degree 2

    static CoordForm function(Chart c, Expr f);
    static CoordForm one_form(Chart c);
    static CoordForm two_form(Chart c);

    /// Adds to the coefficient; degree-2 pairs are put into canonical order
    /// with the sign flip (I, J) swapped means negated.
    void add(const VarRef& dy, const Expr& coeff);
    void add(const VarRef& dyI, const VarRef& dyJ, const Expr& coeff);

    Expr coeff(const VarRef& dy) const;
    Expr coeff(const VarRef& dyI, const VarRef& dyJ) const;
};

CoordForm form_add(const CoordForm& a, const CoordForm& b);
CoordForm form_scale(const CoordForm& a, const Expr& factor);

/// True when all coefficients agree under `equivalent` (coefficientwise).
bool forms_equivalent(const CoordForm& a, const CoordForm& b);

/// Exterior derivative, degree 0 -> 1 and 1 -> 2.
CoordForm exterior_derivative(const CoordForm& f);

/// Degree 2 -> 3, returned as coefficients on ordered triples
/// slot(I) < slot(J) < slot(K); used by the closure checks (d d = 0).
std::map<std::array<VarRef, 3>, Expr> exterior_derivative3(const CoordForm& f);

/// Canonical forms on (T^1_k)^*Q: Theta^a = p^a_i dq^i and
/// Omega^a = dq^i ^ dp^a_i (= -d Theta^a).
std::pair<CoordForm, CoordForm> canonical_theta_omega(int n, int k, int a);

/// Tulczyjew derivation i_{T_a}: forms on (T^1_k)^*Q -> forms on
/// T^1_k((T^1_k)^*Q), degree -1 over the k-velocity projection. Functions map
/// to zero; a 1-form a_I dy^I maps to the function a_I vel_a(y^I); a 2-form
/// inserts the a-th velocity into its first slot.
CoordForm tulczyjew_iT(const CoordForm& mu, int a);

/// d_{T_a} mu = i_{T_a}(d mu) + d(i_{T_a} mu); degree 0 over the projection
/// and commutes with d.
CoordForm tulczyjew_dT(const CoordForm& mu, int a);

/// Closed-form lambda = sum_a d_{T_a} Theta^a: coefficient sum_a u[i,a,a] on
/// dq^i and p^a_i on dw[i,a].
CoordForm build_lambda(int n, int k);

/// Closed-form chi = sum_a i_{T_a} Omega^a: coefficient w[i,a] on dp^a_i and
/// -sum_a u[i,a,a] on dq^i.
CoordForm build_chi(int n, int k);

}  // namespace ksym
