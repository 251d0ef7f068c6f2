#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ksym/expr.hpp"
#include "ksym/polynomial.hpp"

namespace ksym {

/// Nonholonomic constraint data: m scalar constraints Phi_A(q, v) together
/// with the bundle of semi-basic constraint one-forms
/// eta_A = ((eta^1_A)_i dq^i, ..., (eta^k_A)_i dq^i).
struct ConstraintSet {
    int m = 0;
    std::vector<Expr> phi;                             // Phi_A, A = 1..m
    std::vector<std::vector<std::vector<Expr>>> eta;   // eta[A-1][a-1][i-1]

    void validate(int n, int k) const;

    /// Numeric maximal-rank check of the m x (n k) coefficient matrix
    /// (eta^a_A)_i at `probes` pseudo-random points; throws RankDeficientError.
    void check_rank(int n, int k, const std::map<std::string, Rational>& params,
                    int probes = 10, std::uint64_t seed = 0x72616E6BULL,
                    double tol = 1e-10) const;
};

/// A first-order field theory problem: L(q^i, v^i_a) with parameter table,
/// optional per-field body force f_i(x, q) (added to L as sum f_i q^i) and
/// optional nonholonomic constraints.
struct LagrangianProblem {
    int n = 0;
    int k = 0;
    std::map<std::string, Rational> params;
    Expr lagrangian;
    std::vector<Expr> body_force;  // empty, or n expressions in (x, q)
    std::optional<ConstraintSet> constraints;

    LagrangianProblem() = default;
    LagrangianProblem(int n, int k, std::map<std::string, Rational> params, Expr L,
                      std::vector<Expr> body_force = {},
                      std::optional<ConstraintSet> constraints = std::nullopt);

    bool has_body_force() const { return !body_force.empty(); }
    double param_value(const std::string& name) const;
};

/// Fiber derivative FL: momenta P^a_i = dL/dv^i_a.
struct LegendreMap {
    int n = 0, k = 0;
    std::vector<std::vector<Expr>> momenta;  // momenta[a-1][i-1]

    const Expr& at(int a, int i) const { return momenta[a - 1][i - 1]; }
};

LegendreMap legendre_map(const LagrangianProblem& P);

/// Velocity-block row order of the Hessian: (a-1)*n + (i-1), i.e.
/// v^1_1, ..., v^n_1, v^1_2, ..., v^n_k (the chart enumeration).
int velocity_index(int n, int i, int a);

struct RegularityReport {
    int n = 0, k = 0;
    std::vector<std::vector<Expr>> hessian;  // (nk)x(nk), symmetric

    /// Exact determinant when every entry is polynomial (and nk is at desk
    /// scale); otherwise absent with a reason.
    std::optional<Expr> determinant;
    std::string determinant_status;  // "polynomial" or why it is absent

    /// Point verdict, present when the report was built with an assignment.
    std::optional<bool> regular;
    std::optional<int> rank;
};

/// Symbolic Hessian (always) plus verdict/rank at `at` when given. The
/// assignment is completed with the problem's parameter defaults; the
/// numeric rank uses pivoted elimination with relative threshold `rank_tol`.
RegularityReport velocity_hessian(const LagrangianProblem& P,
                                  const std::optional<Assignment>& at = std::nullopt,
                                  double rank_tol = 1e-10);

enum class EnergyFlavor : std::uint8_t { Pontryagin, Lagrangian };

/// Pontryagin: E = p^a_i v^i_a - L on M. Lagrangian: E_L = dL/dv^i_a v^i_a - L
/// on T^1_kQ.
Expr generalized_energy(const LagrangianProblem& P, EnergyFlavor flavor);

/// H = E_L o FL^{-1} for v-quadratic hyperregular Lagrangians. Parameters
/// are substituted from the problem table, the linear momentum-velocity
/// relation is inverted exactly, and the result is an expression over (q, p).
///
/// Throws UnsupportedFormError (L not quadratic in v) or
/// NotHyperregularError (singular Hessian).
Expr hamiltonian_from_lagrangian(const LagrangianProblem& P);

/// The inverse fiber map v^i_a(q, p) used by hamiltonian_from_lagrangian;
/// exposed for constraint transport Phi_A o FL^{-1} in the Hamiltonian
/// picture. Result indexed like velocity_index.
std::vector<Expr> legendre_inverse(const LagrangianProblem& P);

/// Exact determinant of a small matrix of expressions; nullopt when an entry
/// is non-polynomial or the dimension exceeds the subset-DP budget.
std::optional<Expr> symbolic_determinant(const std::vector<std::vector<Expr>>& m);

}  // namespace ksym
