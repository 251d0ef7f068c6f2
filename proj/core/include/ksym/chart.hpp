#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "ksym/errors.hpp"

namespace ksym {

/// Coordinate roles across the bundles built over a configuration space Q
/// with n field components and k parameter directions.
///
///   X   base coordinate x^a of the parameter space R^k
///   Q   position q^i on Q
///   V   velocity v^i_a on the k-tangent bundle
///   P   momentum p^a_i on the k-cotangent bundle
///   W   iterated velocity (v_a)^i, the a-velocity of q^i
///   VV  iterated velocity (v_a)^i_b, the a-velocity of v^i_b
///   U   iterated velocity (v_a)^b_i, the a-velocity of p^b_i
enum class Role : std::uint8_t { X, Q, V, P, W, VV, U };

/// Reference to one chart coordinate. Index use by role:
///   X: a          Q: i          V: i,a        P: i,a (printed p[a,i])
///   W: i,a        VV: i,a,b     U: i,a,b
/// with 1 <= i <= n and 1 <= a,b <= k. The `a` of W/VV/U is the velocity
/// direction; `b` is the inner direction of the lifted v/p coordinate.
struct VarRef {
    Role role = Role::Q;
    int i = 0;
    int a = 0;
    int b = 0;

    friend auto operator<=>(const VarRef&, const VarRef&) = default;

    static VarRef x(int a) { return {Role::X, 0, a, 0}; }
    static VarRef q(int i) { return {Role::Q, i, 0, 0}; }
    static VarRef v(int i, int a) { return {Role::V, i, a, 0}; }
    static VarRef p(int a, int i) { return {Role::P, i, a, 0}; }
    static VarRef w(int i, int a) { return {Role::W, i, a, 0}; }
    static VarRef vv(int i, int a, int b) { return {Role::VV, i, a, b}; }
    static VarRef u(int i, int a, int b) { return {Role::U, i, a, b}; }
};

/// Grammar spelling, e.g. "v[2,1]", "p[1,2]", "u[1,2,2]".
std::string to_string(const VarRef& v);

/// The bundles whose adapted charts the toolkit knows about.
enum class Bundle : std::uint8_t {
    Base,        ///< Q, coordinates (q^i)
    Tangent,     ///< T^1_k Q, coordinates (q^i, v^i_a)
    Cotangent,   ///< (T^1_k)^*Q, coordinates (q^i, p^a_i)
    Pontryagin,  ///< M = T^1_kQ + (T^1_k)^*Q, coordinates (q^i, v^i_a, p^a_i)
    Iterated,    ///< T^1_k((T^1_k)^*Q), adds (w^i_a, u^i_{a,b})
    IteratedM,   ///< T^1_k M, adds (w^i_a, vv^i_{a,b}, u^i_{a,b})
};

std::string to_string(Bundle b);

/// Index bookkeeping for one adapted chart: a fixed bijection between the
/// bundle's coordinates and slot numbers 0..size()-1.
///
/// Enumeration is role-blocked in the order q, v, p, w, vv, u; inside each
/// block the velocity direction `a` runs outermost, then `b`, then `i`
/// (matching the coordinate lists (q^1,..,q^n, v^1_1,..,v^n_1, v^1_2, ...)).
class Chart {
  public:
    Chart() = default;
    Chart(int n, int k, Bundle bundle);

    int n() const { return n_; }
    int k() const { return k_; }
    Bundle bundle() const { return bundle_; }
    int size() const { return static_cast<int>(coords_.size()); }

    const std::vector<VarRef>& coords() const { return coords_; }
    const VarRef& coord(int slot) const { return coords_.at(static_cast<std::size_t>(slot)); }

    /// Slot of `v`, or -1 when the coordinate does not belong to this chart.
    int slot_of(const VarRef& v) const;
    bool contains(const VarRef& v) const { return slot_of(v) >= 0; }

    /// Throws IndexError when any index of `v` is outside 1..n / 1..k.
    /// Base coordinates x[a] are accepted for every bundle.
    void check_bounds(const VarRef& v) const;

    friend bool operator==(const Chart&, const Chart&) = default;

  private:
    int n_ = 0;
    int k_ = 0;
    Bundle bundle_ = Bundle::Base;
    std::vector<VarRef> coords_;
};

/// Factory with the spec'd validation (rejects n == 0 or k == 0).
Chart make_chart(int n, int k, Bundle bundle);

/// The chart obtained by first prolongation: Base -> Tangent,
/// Cotangent -> Iterated, Pontryagin -> IteratedM.
Bundle prolonged_bundle(Bundle base);

/// Velocity coordinate of `base_coord` in direction `a` on the prolonged
/// chart (q -> w or v, p -> u, v -> vv).
VarRef velocity_of(const VarRef& base_coord, int a, Bundle target);

}  // namespace ksym
