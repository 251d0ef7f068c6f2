#pragma once

#include "ksym/grid.hpp"

namespace ksym {

/// Canonical discrete realization of the first prolongation: second-order
/// centered differences at interior nodes, 3-point one-sided closures at
/// boundary nodes. Truncation order 2 in h at every node.
enum class FdScheme : std::uint8_t { CenteredOneSided };

/// Lifts a sampled map into a bundle to its first prolongation chart
/// (Q -> T1kQ, (T1k)*Q -> T1k((T1k)*Q), M -> T1kM): base coordinates are
/// copied through; every velocity slot holds the finite-difference partial
/// of its base coordinate along its direction.
DiscreteField prolong_discrete(const DiscreteField& f,
                               FdScheme scheme = FdScheme::CenteredOneSided,
                               int threads = 1);

/// Finite-difference partial of one stored coordinate along `axis` at
/// `node` (same stencils as prolong_discrete).
double fd_partial(const DiscreteField& f, std::size_t node, int slot, int axis);

/// Centered second difference along axis (interior nodes only).
double fd_second(const DiscreteField& f, std::size_t node, int slot, int axis);

/// Centered mixed second difference along two distinct axes (interior).
double fd_mixed(const DiscreteField& f, std::size_t node, int slot, int axis1, int axis2);

}  // namespace ksym
