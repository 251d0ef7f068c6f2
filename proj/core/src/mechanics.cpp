#include "ksym/mechanics.hpp"

#include <algorithm>
#include <cmath>

#include "ksym/rng.hpp"

namespace ksym {

void ConstraintSet::validate(int n, int k) const {
    if (static_cast<int>(phi.size()) != m || static_cast<int>(eta.size()) != m)
        throw ChartMismatchError("constraint set needs m functions and m eta forms");
    for (const auto& f : phi)
        if (uses_role(f, {Role::P, Role::W, Role::VV, Role::U, Role::X}))
            throw ChartMismatchError("constraint functions live on T1kQ: (q, v) variables only");
    for (const auto& form : eta) {
        if (static_cast<int>(form.size()) != k)
            throw ChartMismatchError("each eta_A needs k slots");
        for (const auto& slot : form) {
            if (static_cast<int>(slot.size()) != n)
                throw ChartMismatchError("each eta^a_A needs n dq-coefficients");
            for (const auto& c : slot)
                if (uses_role(c, {Role::P, Role::W, Role::VV, Role::U, Role::X}))
                    throw ChartMismatchError("eta coefficients live on T1kQ");
        }
    }
}

void ConstraintSet::check_rank(int n, int k, const std::map<std::string, Rational>& params,
                               int probes, std::uint64_t seed, double tol) const {
    if (m == 0) return;
    Rng rng(seed);
    Chart chart = make_chart(n, k, Bundle::Tangent);
    for (int probe = 0; probe < probes; ++probe) {
        Assignment at;
        for (const auto& c : chart.coords()) at.set(c, rng.uniform(-2, 2));
        for (const auto& [name, val] : params) at.set_param(name, to_double(val));
        // m x (n k) coefficient matrix, columns indexed by (a, i).
        std::vector<std::vector<double>> mat(m, std::vector<double>(n * k, 0.0));
        double scale = 0;
        for (int A = 1; A <= m; ++A)
            for (int a = 1; a <= k; ++a)
                for (int i = 1; i <= n; ++i) {
                    double v = evaluate(eta[A - 1][a - 1][i - 1], at);
                    mat[A - 1][velocity_index(n, i, a)] = v;
                    scale = std::max(scale, std::abs(v));
                }
        if (scale == 0) throw RankDeficientError("constraint forms vanish at a probe point");
        // Row-echelon rank.
        int rank = 0;
        int cols = n * k;
        for (int col = 0; col < cols && rank < m; ++col) {
            int piv = -1;
            double best = tol * scale;
            for (int r = rank; r < m; ++r)
                if (std::abs(mat[r][col]) > best) {
                    best = std::abs(mat[r][col]);
                    piv = r;
                }
            if (piv < 0) continue;
            std::swap(mat[rank], mat[piv]);
            for (int r = rank + 1; r < m; ++r) {
                double f = mat[r][col] / mat[rank][col];
                for (int c2 = col; c2 < cols; ++c2) mat[r][c2] -= f * mat[rank][c2];
            }
            ++rank;
        }
        if (rank < m)
            throw RankDeficientError("constraint coefficient matrix has rank " +
                                     std::to_string(rank) + " < m = " + std::to_string(m) +
                                     " at a probe point");
    }
}

LagrangianProblem::LagrangianProblem(int n_, int k_, std::map<std::string, Rational> params_,
                                     Expr L, std::vector<Expr> body_force_,
                                     std::optional<ConstraintSet> constraints_)
    : n(n_), k(k_), params(std::move(params_)), lagrangian(std::move(L)),
      body_force(std::move(body_force_)), constraints(std::move(constraints_)) {
    Chart chart = make_chart(n, k, Bundle::Tangent);
    for (const auto& s : free_symbols(lagrangian)) {
        if (s.var.role == Role::P || s.var.role == Role::W || s.var.role == Role::VV ||
            s.var.role == Role::U || s.var.role == Role::X)
            throw ChartMismatchError("Lagrangian must depend on (q, v) only, found " +
                                     to_string(s.var));
        chart.check_bounds(s.var);
    }
    if (!body_force.empty()) {
        if (static_cast<int>(body_force.size()) != n)
            throw ChartMismatchError("body force needs one component per field");
        for (const auto& f : body_force)
            if (uses_role(f, {Role::V, Role::P, Role::W, Role::VV, Role::U}))
                throw ChartMismatchError("body force components depend on (x, q) only");
    }
    if (constraints) constraints->validate(n, k);
}

double LagrangianProblem::param_value(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end()) throw MissingSymbolError("no default for parameter '" + name + "'");
    return to_double(it->second);
}

LegendreMap legendre_map(const LagrangianProblem& P) {
    LegendreMap fl;
    fl.n = P.n;
    fl.k = P.k;
    fl.momenta.resize(P.k);
    for (int a = 1; a <= P.k; ++a) {
        fl.momenta[a - 1].reserve(P.n);
        for (int i = 1; i <= P.n; ++i)
            fl.momenta[a - 1].push_back(differentiate(P.lagrangian, VarRef::v(i, a)));
    }
    return fl;
}

int velocity_index(int n, int i, int a) { return (a - 1) * n + (i - 1); }

namespace {

/// Laplace expansion along rows with memoization over column subsets:
/// entry `mask` holds the determinant of the last popcount(mask) rows
/// restricted to the columns in `mask`.
std::optional<Poly> poly_matrix_det(const std::vector<std::vector<Poly>>& pm) {
    const int dim = static_cast<int>(pm.size());
    if (dim > 20) return std::nullopt;  // subset-DP budget
    std::vector<std::optional<Poly>> memo(std::size_t(1) << dim);
    auto rec = [&](auto&& self, std::uint32_t mask) -> const Poly& {
        auto& slot = memo[mask];
        if (slot) return *slot;
        int r = dim - __builtin_popcount(mask);
        Poly acc;
        if (mask == 0) {
            acc = Poly(Rational(1));
        } else {
            int sign = 1;
            for (int c = 0; c < dim; ++c) {
                if (!(mask >> c & 1)) continue;
                if (!pm[r][c].is_zero())
                    acc += (pm[r][c] * self(self, mask & ~(1u << c))).scaled(Rational(sign));
                sign = -sign;
            }
        }
        slot = std::move(acc);
        return *slot;
    };
    return rec(rec, (std::uint32_t(1) << dim) - 1);
}

}  // namespace

std::optional<Expr> symbolic_determinant(const std::vector<std::vector<Expr>>& m) {
    const int dim = static_cast<int>(m.size());
    if (dim == 0) return constant(1);
    std::vector<std::vector<Poly>> pm(dim, std::vector<Poly>(dim));
    for (int r = 0; r < dim; ++r) {
        if (static_cast<int>(m[r].size()) != dim) throw Error("determinant needs a square matrix");
        for (int c = 0; c < dim; ++c) {
            auto p = expr_to_poly(m[r][c]);
            if (!p) return std::nullopt;
            pm[r][c] = std::move(*p);
        }
    }
    auto det = poly_matrix_det(pm);
    if (!det) return std::nullopt;
    return poly_to_expr(*det);
}

RegularityReport velocity_hessian(const LagrangianProblem& P, const std::optional<Assignment>& at,
                                  double rank_tol) {
    RegularityReport rep;
    rep.n = P.n;
    rep.k = P.k;
    const int dim = P.n * P.k;
    LegendreMap fl = legendre_map(P);
    rep.hessian.assign(dim, std::vector<Expr>(dim));
    for (int a = 1; a <= P.k; ++a)
        for (int i = 1; i <= P.n; ++i)
            for (int b = 1; b <= P.k; ++b)
                for (int j = 1; j <= P.n; ++j)
                    rep.hessian[velocity_index(P.n, i, a)][velocity_index(P.n, j, b)] =
                        differentiate(fl.at(a, i), VarRef::v(j, b));

    if (auto det = symbolic_determinant(rep.hessian)) {
        rep.determinant = *det;
        rep.determinant_status = "polynomial";
    } else {
        rep.determinant_status = dim > 20 ? "dimension above exact-determinant budget"
                                          : "non-polynomial";
    }

    if (at) {
        Assignment point = *at;
        for (const auto& [name, val] : P.params)
            point.params.emplace(name, to_double(val));  // defaults fill the gaps
        std::vector<std::vector<double>> num(dim, std::vector<double>(dim));
        double scale = 0;
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) {
                num[r][c] = evaluate(rep.hessian[r][c], point);
                scale = std::max(scale, std::abs(num[r][c]));
            }
        int rank = 0;
        if (scale > 0) {
            for (int col = 0; col < dim && rank < dim; ++col) {
                int piv = -1;
                double best = rank_tol * scale;
                for (int r = rank; r < dim; ++r)
                    if (std::abs(num[r][col]) > best) {
                        best = std::abs(num[r][col]);
                        piv = r;
                    }
                if (piv < 0) continue;
                std::swap(num[rank], num[piv]);
                for (int r = rank + 1; r < dim; ++r) {
                    double f = num[r][col] / num[rank][col];
                    for (int c2 = col; c2 < dim; ++c2) num[r][c2] -= f * num[rank][c2];
                }
                ++rank;
            }
        }
        rep.rank = rank;
        rep.regular = rank == dim;
    }
    return rep;
}

Expr generalized_energy(const LagrangianProblem& P, EnergyFlavor flavor) {
    std::vector<Expr> terms;
    for (int a = 1; a <= P.k; ++a)
        for (int i = 1; i <= P.n; ++i) {
            Expr weight = flavor == EnergyFlavor::Pontryagin
                              ? variable(VarRef::p(a, i))
                              : differentiate(P.lagrangian, VarRef::v(i, a));
            terms.push_back(mul(weight, variable(VarRef::v(i, a))));
        }
    return sub(add(std::move(terms)), P.lagrangian);
}

namespace {

/// Hessian entries and momenta with parameters substituted; throws
/// UnsupportedFormError unless L is quadratic-plus-linear in v.
struct QuadraticData {
    int dim;
    std::vector<std::vector<Poly>> A;  // Hessian, v-free
    std::vector<Poly> b;               // dL/dv at v = 0
};

QuadraticData quadratic_data(const LagrangianProblem& P) {
    QuadraticData qd;
    qd.dim = P.n * P.k;
    LegendreMap fl = legendre_map(P);
    std::map<Symbol, Expr> v_zero;
    for (int a = 1; a <= P.k; ++a)
        for (int i = 1; i <= P.n; ++i) v_zero.emplace(Symbol(VarRef::v(i, a)), constant(0));
    qd.A.assign(qd.dim, std::vector<Poly>(qd.dim));
    qd.b.assign(qd.dim, Poly{});
    for (int a = 1; a <= P.k; ++a)
        for (int i = 1; i <= P.n; ++i) {
            int r = velocity_index(P.n, i, a);
            Expr pa = substitute_params(fl.at(a, i), P.params);
            for (int b2 = 1; b2 <= P.k; ++b2)
                for (int j = 1; j <= P.n; ++j) {
                    Expr h = differentiate(pa, VarRef::v(j, b2));
                    if (uses_role(h, {Role::V}))
                        throw UnsupportedFormError(
                            "Lagrangian is not quadratic in the velocities");
                    auto hp = expr_to_poly(h);
                    if (!hp)
                        throw UnsupportedFormError(
                            "Hessian entries must be polynomial in q for symbolic inversion");
                    qd.A[r][velocity_index(P.n, j, b2)] = std::move(*hp);
                }
            auto bp = expr_to_poly(substitute(pa, v_zero));
            if (!bp)
                throw UnsupportedFormError(
                    "momentum map must be polynomial in q for symbolic inversion");
            qd.b[r] = std::move(*bp);
        }
    return qd;
}

}  // namespace

std::vector<Expr> legendre_inverse(const LagrangianProblem& P) {
    QuadraticData qd = quadratic_data(P);
    const int dim = qd.dim;

    auto det = poly_matrix_det(qd.A);
    if (!det) throw UnsupportedFormError("velocity dimension above symbolic inversion budget");
    if (det->is_zero())
        throw NotHyperregularError("velocity Hessian is singular; no global Legendre inverse");

    // rhs_r = p_r - b_r as polynomials over (q, p).
    std::vector<Poly> rhs(dim);
    for (int a = 1; a <= P.k; ++a)
        for (int i = 1; i <= P.n; ++i) {
            int r = velocity_index(P.n, i, a);
            rhs[r] = Poly(PolyKey::var(Symbol(VarRef::p(a, i)))) - qd.b[r];
        }

    // Cramer via first minors: v_r = sum_c adj[r][c] rhs_c / det,
    // adj[r][c] = (-1)^{r+c} minor(c, r).
    auto minor = [&](int dr, int dc) {
        std::vector<std::vector<Poly>> sub;
        sub.reserve(dim - 1);
        for (int r = 0; r < dim; ++r) {
            if (r == dr) continue;
            std::vector<Poly> row;
            row.reserve(dim - 1);
            for (int c = 0; c < dim; ++c)
                if (c != dc) row.push_back(qd.A[r][c]);
            sub.push_back(std::move(row));
        }
        return *poly_matrix_det(sub);
    };

    std::vector<Expr> out(dim);
    const bool const_det = det->is_constant();
    for (int r = 0; r < dim; ++r) {
        Poly acc;
        for (int c = 0; c < dim; ++c) {
            Poly adj = minor(c, r);
            if ((r + c) % 2) adj = -adj;
            acc += adj * rhs[c];
        }
        if (const_det) {
            out[r] = poly_to_expr(acc.scaled(Rational(1) / det->constant_value()));
        } else {
            out[r] = div(poly_to_expr(acc), poly_to_expr(*det));
        }
    }
    return out;
}

Expr hamiltonian_from_lagrangian(const LagrangianProblem& P) {
    std::vector<Expr> vsol = legendre_inverse(P);
    std::map<Symbol, Expr> vmap;
    for (int a = 1; a <= P.k; ++a)
        for (int i = 1; i <= P.n; ++i)
            vmap.emplace(Symbol(VarRef::v(i, a)), vsol[velocity_index(P.n, i, a)]);
    // H = p.v(q,p) - L(q, v(q,p)) with parameters substituted.
    std::vector<Expr> pv;
    for (int a = 1; a <= P.k; ++a)
        for (int i = 1; i <= P.n; ++i)
            pv.push_back(mul(variable(VarRef::p(a, i)), vmap.at(Symbol(VarRef::v(i, a)))));
    Expr L = substitute_params(P.lagrangian, P.params);
    return sub(add(std::move(pv)), substitute(L, vmap));
}

}  // namespace ksym
