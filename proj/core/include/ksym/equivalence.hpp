#pragma once

#include <cstdint>
#include <string>

#include "ksym/expr.hpp"

namespace ksym {

enum class Certificate : std::uint8_t {
    Polynomial,  ///< exact equality of sparse normal forms
    Sampled,     ///< agreement at deterministic pseudo-random points
};

std::string to_string(Certificate c);

struct Equivalence {
    bool equal = false;
    Certificate certificate = Certificate::Polynomial;
};

struct EquivalenceOptions {
    double tol = 1e-9;              ///< relative tolerance for the sampled route
    int points = 64;                ///< sample count
    std::uint64_t seed = 0x6B73796DULL;  ///< fixed; not exposed on the CLI
    double lo = -2.0, hi = 2.0;     ///< sample box
    double guard_eps = 1e-3;        ///< reject samples this close to a singularity
    int max_resamples = 8;          ///< consecutive failures before giving up
};

/// Decides equality of two expressions. Both polynomial: exact normal-form
/// comparison. Otherwise: agreement within `tol` (relative) at `points`
/// deterministic pseudo-random assignments of every free symbol and
/// parameter; sample points that hit a singularity are redrawn, and
/// `max_resamples` consecutive singular draws raise DomainError.
Equivalence equivalent(const Expr& a, const Expr& b, const EquivalenceOptions& opts = {});

/// Convenience: equal under the default options (either certificate).
bool is_equivalent(const Expr& a, const Expr& b);

}  // namespace ksym
