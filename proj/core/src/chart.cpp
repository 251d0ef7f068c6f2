#include "ksym/chart.hpp"

namespace ksym {

std::string to_string(const VarRef& v) {
    auto idx = [](std::initializer_list<int> xs) {
        std::string s = "[";
        bool first = true;
        for (int x : xs) {
            if (!first) s += ",";
            s += std::to_string(x);
            first = false;
        }
        return s + "]";
    };
    switch (v.role) {
        case Role::X: return "x" + idx({v.a});
        case Role::Q: return "q" + idx({v.i});
        case Role::V: return "v" + idx({v.i, v.a});
        case Role::P: return "p" + idx({v.a, v.i});
        case Role::W: return "w" + idx({v.i, v.a});
        case Role::VV: return "vv" + idx({v.i, v.a, v.b});
        case Role::U: return "u" + idx({v.i, v.a, v.b});
    }
    return "?";
}

std::string to_string(Bundle b) {
    switch (b) {
        case Bundle::Base: return "Q";
        case Bundle::Tangent: return "T1kQ";
        case Bundle::Cotangent: return "T1k*Q";
        case Bundle::Pontryagin: return "M";
        case Bundle::Iterated: return "T1k(T1k*Q)";
        case Bundle::IteratedM: return "T1kM";
    }
    return "?";
}

Chart::Chart(int n, int k, Bundle bundle) : n_(n), k_(k), bundle_(bundle) {
    auto q_block = [&] {
        for (int i = 1; i <= n; ++i) coords_.push_back(VarRef::q(i));
    };
    auto v_block = [&] {
        for (int a = 1; a <= k; ++a)
            for (int i = 1; i <= n; ++i) coords_.push_back(VarRef::v(i, a));
    };
    auto p_block = [&] {
        for (int a = 1; a <= k; ++a)
            for (int i = 1; i <= n; ++i) coords_.push_back(VarRef::p(a, i));
    };
    auto w_block = [&] {
        for (int a = 1; a <= k; ++a)
            for (int i = 1; i <= n; ++i) coords_.push_back(VarRef::w(i, a));
    };
    auto vv_block = [&] {
        for (int a = 1; a <= k; ++a)
            for (int b = 1; b <= k; ++b)
                for (int i = 1; i <= n; ++i) coords_.push_back(VarRef::vv(i, a, b));
    };
    auto u_block = [&] {
        for (int a = 1; a <= k; ++a)
            for (int b = 1; b <= k; ++b)
                for (int i = 1; i <= n; ++i) coords_.push_back(VarRef::u(i, a, b));
    };
    switch (bundle) {
        case Bundle::Base: q_block(); break;
        case Bundle::Tangent:
            q_block();
            v_block();
            break;
        case Bundle::Cotangent:
            q_block();
            p_block();
            break;
        case Bundle::Pontryagin:
            q_block();
            v_block();
            p_block();
            break;
        case Bundle::Iterated:
            q_block();
            p_block();
            w_block();
            u_block();
            break;
        case Bundle::IteratedM:
            q_block();
            v_block();
            p_block();
            w_block();
            vv_block();
            u_block();
            break;
    }
}

int Chart::slot_of(const VarRef& v) const {
    // Blocks are contiguous; compute the offset arithmetically.
    const int n = n_, k = k_;
    auto in_field = [&](const VarRef& r) { return r.i >= 1 && r.i <= n; };
    auto in_dir = [&](int a) { return a >= 1 && a <= k; };
    int base = 0;
    auto block = [&](Role role) -> int {
        switch (role) {
            case Role::Q: return n;
            case Role::V:
            case Role::P:
            case Role::W: return n * k;
            case Role::VV:
            case Role::U: return n * k * k;
            case Role::X: return 0;
        }
        return 0;
    };
    std::vector<Role> layout;
    switch (bundle_) {
        case Bundle::Base: layout = {Role::Q}; break;
        case Bundle::Tangent: layout = {Role::Q, Role::V}; break;
        case Bundle::Cotangent: layout = {Role::Q, Role::P}; break;
        case Bundle::Pontryagin: layout = {Role::Q, Role::V, Role::P}; break;
        case Bundle::Iterated: layout = {Role::Q, Role::P, Role::W, Role::U}; break;
        case Bundle::IteratedM:
            layout = {Role::Q, Role::V, Role::P, Role::W, Role::VV, Role::U};
            break;
    }
    for (Role role : layout) {
        if (v.role == role) {
            if (!in_field(v)) return -1;
            switch (role) {
                case Role::Q: return base + (v.i - 1);
                case Role::V:
                case Role::P:
                case Role::W:
                    if (!in_dir(v.a)) return -1;
                    return base + (v.a - 1) * n + (v.i - 1);
                case Role::VV:
                case Role::U:
                    if (!in_dir(v.a) || !in_dir(v.b)) return -1;
                    return base + ((v.a - 1) * k + (v.b - 1)) * n + (v.i - 1);
                default: return -1;
            }
        }
        base += block(role);
    }
    return -1;
}

void Chart::check_bounds(const VarRef& v) const {
    auto bad = [&](const std::string& what) {
        throw IndexError("index out of range in " + to_string(v) + ": " + what + " for chart with n=" +
                         std::to_string(n_) + ", k=" + std::to_string(k_));
    };
    if (v.role == Role::X) {
        if (v.a < 1 || v.a > k_) bad("base direction must be in 1..k");
        return;
    }
    if (v.i < 1 || v.i > n_) bad("field index must be in 1..n");
    if (v.role == Role::Q) return;
    if (v.a < 1 || v.a > k_) bad("direction index must be in 1..k");
    if ((v.role == Role::U || v.role == Role::VV) && (v.b < 1 || v.b > k_))
        bad("second direction index must be in 1..k");
}

Chart make_chart(int n, int k, Bundle bundle) {
    if (n < 1 || k < 1) throw IndexError("chart requires n >= 1 and k >= 1");
    return Chart(n, k, bundle);
}

Bundle prolonged_bundle(Bundle base) {
    switch (base) {
        case Bundle::Base: return Bundle::Tangent;
        case Bundle::Cotangent: return Bundle::Iterated;
        case Bundle::Pontryagin: return Bundle::IteratedM;
        default:
            throw ChartMismatchError("first prolongation implemented for Q, (T1k)*Q and M only");
    }
}

VarRef velocity_of(const VarRef& base_coord, int a, Bundle target) {
    switch (base_coord.role) {
        case Role::Q:
            return target == Bundle::Tangent ? VarRef::v(base_coord.i, a) : VarRef::w(base_coord.i, a);
        case Role::P: return VarRef::u(base_coord.i, a, base_coord.a);
        case Role::V: return VarRef::vv(base_coord.i, a, base_coord.a);
        default:
            throw ChartMismatchError("no velocity slot for coordinate " + to_string(base_coord));
    }
}

}  // namespace ksym
