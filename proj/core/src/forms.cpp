#include "ksym/forms.hpp"

#include "ksym/equivalence.hpp"

namespace ksym {

CoordForm CoordForm::function(Chart c, Expr f) {
    CoordForm out;
    out.degree = 0;
    out.chart = std::move(c);
    out.scalar = std::move(f);
    return out;
}

CoordForm CoordForm::one_form(Chart c) {
    CoordForm out;
    out.degree = 1;
    out.chart = std::move(c);
    return out;
}

CoordForm CoordForm::two_form(Chart c) {
    CoordForm out;
    out.degree = 2;
    out.chart = std::move(c);
    return out;
}

void CoordForm::add(const VarRef& dy, const Expr& coeff) {
    if (degree != 1) throw ChartMismatchError("dy coefficient on a non-1-form");
    if (chart.slot_of(dy) < 0)
        throw ChartMismatchError("basis covector d" + to_string(dy) + " not on chart");
    auto [it, inserted] = one.emplace(dy, coeff);
    if (!inserted) it->second = ksym::add(it->second, coeff);
    if (it->second.is_zero()) one.erase(it);
}

void CoordForm::add(const VarRef& dyI, const VarRef& dyJ, const Expr& coeff) {
    if (degree != 2) throw ChartMismatchError("wedge coefficient on a non-2-form");
    int si = chart.slot_of(dyI), sj = chart.slot_of(dyJ);
    if (si < 0 || sj < 0) throw ChartMismatchError("basis covector not on chart");
    if (si == sj) return;  // dy ^ dy = 0
    VarRef a = dyI, b = dyJ;
    Expr c = coeff;
    if (si > sj) {
        std::swap(a, b);
        c = neg(c);
    }
    auto [it, inserted] = two.emplace(std::make_pair(a, b), c);
    if (!inserted) it->second = ksym::add(it->second, c);
    if (it->second.is_zero()) two.erase(it);
}

Expr CoordForm::coeff(const VarRef& dy) const {
    auto it = one.find(dy);
    return it == one.end() ? constant(0) : it->second;
}

Expr CoordForm::coeff(const VarRef& dyI, const VarRef& dyJ) const {
    int si = chart.slot_of(dyI), sj = chart.slot_of(dyJ);
    if (si == sj) return constant(0);
    bool flip = si > sj;
    auto it = two.find(flip ? std::make_pair(dyJ, dyI) : std::make_pair(dyI, dyJ));
    if (it == two.end()) return constant(0);
    return flip ? neg(it->second) : it->second;
}

CoordForm form_add(const CoordForm& a, const CoordForm& b) {
    if (a.degree != b.degree || !(a.chart == b.chart))
        throw ChartMismatchError("form addition needs matching degree and chart");
    CoordForm out = a;
    if (a.degree == 0) {
        out.scalar = add(a.scalar, b.scalar);
    } else if (a.degree == 1) {
        for (const auto& [dy, c] : b.one) out.add(dy, c);
    } else {
        for (const auto& [dys, c] : b.two) out.add(dys.first, dys.second, c);
    }
    return out;
}

CoordForm form_scale(const CoordForm& a, const Expr& factor) {
    CoordForm out = a;
    if (a.degree == 0) out.scalar = mul(a.scalar, factor);
    for (auto& [dy, c] : out.one) c = mul(c, factor);
    for (auto& [dys, c] : out.two) c = mul(c, factor);
    return out;
}

bool forms_equivalent(const CoordForm& a, const CoordForm& b) {
    if (a.degree != b.degree || !(a.chart == b.chart)) return false;
    if (a.degree == 0) return is_equivalent(a.scalar, b.scalar);
    if (a.degree == 1) {
        for (const auto& c : a.chart.coords())
            if (!is_equivalent(a.coeff(c), b.coeff(c))) return false;
        return true;
    }
    const auto& coords = a.chart.coords();
    for (std::size_t i = 0; i < coords.size(); ++i)
        for (std::size_t j = i + 1; j < coords.size(); ++j)
            if (!is_equivalent(a.coeff(coords[i], coords[j]), b.coeff(coords[i], coords[j])))
                return false;
    return true;
}

CoordForm exterior_derivative(const CoordForm& f) {
    if (f.degree == 0) {
        CoordForm out = CoordForm::one_form(f.chart);
        for (const auto& y : f.chart.coords()) {
            Expr d = differentiate(f.scalar, y);
            if (!d.is_zero()) out.add(y, d);
        }
        return out;
    }
    if (f.degree == 1) {
        CoordForm out = CoordForm::two_form(f.chart);
        for (const auto& [dyJ, aJ] : f.one)
            for (const auto& yI : f.chart.coords()) {
                Expr d = differentiate(aJ, yI);
                if (!d.is_zero()) out.add(yI, dyJ, d);  // da_J ^ dy^J
            }
        return out;
    }
    throw ChartMismatchError("exterior derivative implemented for degrees 0 and 1");
}

std::map<std::array<VarRef, 3>, Expr> exterior_derivative3(const CoordForm& f) {
    if (f.degree != 2) throw ChartMismatchError("degree-3 derivative takes a 2-form");
    std::map<std::array<VarRef, 3>, Expr> out;
    auto addt = [&](const VarRef& a, const VarRef& b, const VarRef& c, const Expr& e) {
        // order (a,b,c) by chart slot with the permutation sign
        std::array<VarRef, 3> key{a, b, c};
        std::array<int, 3> slots{f.chart.slot_of(a), f.chart.slot_of(b), f.chart.slot_of(c)};
        Expr val = e;
        // bubble sort of 3 elements, tracking sign
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i < 2 - pass; ++i)
                if (slots[i] > slots[i + 1]) {
                    std::swap(slots[i], slots[i + 1]);
                    std::swap(key[i], key[i + 1]);
                    val = neg(val);
                }
        if (slots[0] == slots[1] || slots[1] == slots[2]) return;
        auto [it, inserted] = out.emplace(key, val);
        if (!inserted) it->second = add(it->second, val);
        if (it->second.is_zero()) out.erase(it);
    };
    for (const auto& [dys, b] : f.two)
        for (const auto& yK : f.chart.coords()) {
            Expr d = differentiate(b, yK);
            if (!d.is_zero()) addt(yK, dys.first, dys.second, d);
        }
    return out;
}

std::pair<CoordForm, CoordForm> canonical_theta_omega(int n, int k, int a) {
    if (a < 1 || a > k) throw IndexError("form index a must be in 1..k");
    Chart chart = make_chart(n, k, Bundle::Cotangent);
    CoordForm theta = CoordForm::one_form(chart);
    CoordForm omega = CoordForm::two_form(chart);
    for (int i = 1; i <= n; ++i) {
        theta.add(VarRef::q(i), variable(VarRef::p(a, i)));
        omega.add(VarRef::q(i), VarRef::p(a, i), constant(1));
    }
    return {theta, omega};
}

namespace {

/// The a-velocity coordinate of a base coordinate of (T^1_k)^*Q on the
/// iterated chart: q^i -> w[i,a], p^b_i -> u[i,a,b].
VarRef cotangent_velocity(const VarRef& y, int a) {
    switch (y.role) {
        case Role::Q: return VarRef::w(y.i, a);
        case Role::P: return VarRef::u(y.i, a, y.a);
        default: throw ChartMismatchError("not a (T1k)*Q coordinate: " + to_string(y));
    }
}

void require_cotangent(const CoordForm& mu) {
    if (mu.chart.bundle() != Bundle::Cotangent)
        throw ChartMismatchError("Tulczyjew derivations take forms on (T1k)*Q");
}

}  // namespace

CoordForm tulczyjew_iT(const CoordForm& mu, int a) {
    require_cotangent(mu);
    if (a < 1 || a > mu.chart.k()) throw IndexError("derivation index a must be in 1..k");
    Chart target = make_chart(mu.chart.n(), mu.chart.k(), Bundle::Iterated);
    if (mu.degree == 0) return CoordForm::function(target, constant(0));
    if (mu.degree == 1) {
        // i_{T_a}(a_I dy^I) = a_I * vel_a(y^I), a function on the iterated chart.
        std::vector<Expr> terms;
        for (const auto& [dy, c] : mu.one)
            terms.push_back(mul(c, variable(cotangent_velocity(dy, a))));
        return CoordForm::function(target, add(std::move(terms)));
    }
    // i_{T_a}(b_IJ dy^I ^ dy^J) = b_IJ (vel_a(y^I) dy^J - vel_a(y^J) dy^I):
    // the a-th velocity fills the first argument slot.
    CoordForm out = CoordForm::one_form(target);
    for (const auto& [dys, b] : mu.two) {
        out.add(dys.second, mul(b, variable(cotangent_velocity(dys.first, a))));
        out.add(dys.first, neg(mul(b, variable(cotangent_velocity(dys.second, a)))));
    }
    return out;
}

CoordForm tulczyjew_dT(const CoordForm& mu, int a) {
    require_cotangent(mu);
    if (mu.degree > 1)
        throw ChartMismatchError("d_{T_a} implemented for functions and 1-forms");
    // For functions i_{T_a} mu = 0, so the d(i_{T_a} mu) term drops and the
    // result stays a function.
    if (mu.degree == 0) return tulczyjew_iT(exterior_derivative(mu), a);
    return form_add(tulczyjew_iT(exterior_derivative(mu), a),
                    exterior_derivative(tulczyjew_iT(mu, a)));
}

CoordForm build_lambda(int n, int k) {
    Chart target = make_chart(n, k, Bundle::Iterated);
    CoordForm out = CoordForm::one_form(target);
    for (int i = 1; i <= n; ++i) {
        std::vector<Expr> trace;
        for (int a = 1; a <= k; ++a) trace.push_back(variable(VarRef::u(i, a, a)));
        out.add(VarRef::q(i), add(std::move(trace)));
        for (int a = 1; a <= k; ++a)
            out.add(VarRef::w(i, a), variable(VarRef::p(a, i)));
    }
    return out;
}

CoordForm build_chi(int n, int k) {
    Chart target = make_chart(n, k, Bundle::Iterated);
    CoordForm out = CoordForm::one_form(target);
    for (int i = 1; i <= n; ++i) {
        std::vector<Expr> trace;
        for (int a = 1; a <= k; ++a) trace.push_back(variable(VarRef::u(i, a, a)));
        out.add(VarRef::q(i), neg(add(std::move(trace))));
        for (int a = 1; a <= k; ++a)
            out.add(VarRef::p(a, i), variable(VarRef::w(i, a)));
    }
    return out;
}

}  // namespace ksym
