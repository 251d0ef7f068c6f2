#pragma once

#include <string>
#include <vector>

#include "ksym/mechanics.hpp"

namespace ksym {

/// Row classification of a derived field-equation system.
enum class RowKind : std::uint8_t {
    VelocityDef,  ///< phi[i,a] = d/dx[a](phi[i])
    MomentumDef,  ///< psi[a,i] = dL/dv^i_a at pr1
    Balance,      ///< sum_a d/dx[a](psi[a,i]) = dL/dq^i (+ multipliers)
    Constraint,   ///< Phi_A = 0 (or Psi_A = 0 on the Hamiltonian side)
    HdwPosition,  ///< d/dx[a](phi[i]) = dH/dp^a_i
    HdwMomentum,  ///< sum_a d/dx[a](psi[a,i]) = -dH/dq^i (+ multipliers)
};

std::string to_string(RowKind k);

/// One Lagrange-multiplier term lam[A,alpha] * coeff on a row's right side.
struct MultiplierTerm {
    int A = 0;
    int alpha = 0;
    Expr coeff;
};

/// One residual row lhs = rhs [+ multiplier terms]. Variables are field
/// symbols: q -> phi^i(x), v -> phi^i_a(x), p -> psi^a_i(x); total
/// derivatives are the jet decorations of Symbol.
struct PdeRow {
    RowKind kind = RowKind::Balance;
    int i = 0;      // field index; constraint index A for Constraint rows
    int alpha = 0;  // direction for per-direction rows, else 0
    Expr lhs;
    Expr rhs;
    std::vector<MultiplierTerm> multipliers;

    Expr residual() const { return sub(lhs, rhs); }
};

struct PdeSystem {
    int n = 0, k = 0, m = 0;
    std::vector<PdeRow> rows;

    std::vector<const PdeRow*> rows_of(RowKind kind) const;
    const PdeRow* find(RowKind kind, int i, int alpha = 0) const;
};

/// v^i_a -> the jet symbol d/dx[a](phi[i]); everything else unchanged.
Expr along_prolongation(const Expr& e);

/// Formal total derivative D_a: jet decorations on field symbols, D_a x^b is
/// the Kronecker delta, parameters are constants. Second-order jets only on
/// position fields.
Expr total_derivative(const Expr& e, int a);

/// Classical Euler-Lagrange field equations: n balance rows
/// sum_a D_a(dL/dv^i_a o phi^(1)) = dL/dq^i o phi^(1), expanded by the chain
/// rule into symmetrized second-order jet symbols.
PdeSystem derive_el(const LagrangianProblem& P);

/// Implicit Euler-Lagrange field equations on the Pontryagin bundle:
/// nk velocity definitions, nk momentum definitions, n balance rows; first
/// order only.
PdeSystem derive_implicit_el(const LagrangianProblem& P);

/// Nonholonomic implicit Euler-Lagrange equations: the implicit rows plus m
/// constraint rows Phi_A(phi^(1)) = 0 and multiplier terms
/// lam^A_a (eta^a_A)_i on the balance rows.
PdeSystem derive_nh_implicit_el(const LagrangianProblem& P);

/// Hamilton-de Donder-Weyl equations for an arbitrary H(q, p).
PdeSystem derive_hdw(const Expr& H, int n, int k);

/// Nonholonomic Hamilton-de Donder-Weyl system for a hyperregular Lagrangian
/// problem: H = E_L o FL^{-1}, constraints transported by FL^{-1}.
PdeSystem derive_nh_hdw(const LagrangianProblem& P);

/// Induced constraint set of k distributions on Q given by annihilator
/// one-forms: oneForms[a-1] lists the forms psi-bar^a_{l_a} as n q-only
/// dq-coefficients each. Phi^a_l = (psi-bar^a_l)_i(q) v^i_a; the eta forms
/// are nonzero only in slot a.
ConstraintSet distribution_constraints(
    const std::vector<std::vector<std::vector<Expr>>>& oneForms, int n, int k);

/// Substitutes the definition rows into the balance rows: implicit (and
/// nonholonomic implicit) systems reduce to second-order classical form;
/// HdDW systems are pulled back along p = FL(v), v = jets (which needs the
/// Lagrangian). Constraint rows are kept, definition rows dropped.
PdeSystem eliminate_definitions(const PdeSystem& sys, const LagrangianProblem& P);

/// Stable text rendering: one row per line,
///   `<kind>: <lhs> = <rhs> [+ lam[A,a]*(coeff)]...`
/// rows ordered by (kind, alpha, i), D_a printed as d/dx[a].
std::string render_text(const PdeSystem& sys);

/// Machine-readable rendering with the same content as a JSON tree.
std::string render_tree(const PdeSystem& sys);

/// Re-parses the text rendering (round-trip testing surface).
PdeSystem parse_system_text(const std::string& text, int n, int k);

/// lhs - rhs agree under `equivalent` and the multiplier terms match
/// per (A, alpha).
bool rows_equivalent(const PdeRow& a, const PdeRow& b);

/// Rowwise comparison after sorting both sides by (kind, alpha, i).
bool systems_equivalent(const PdeSystem& a, const PdeSystem& b);

/// Parameter substitution over every row.
PdeSystem substitute_system_params(const PdeSystem& sys,
                                   const std::map<std::string, Rational>& values);

}  // namespace ksym
