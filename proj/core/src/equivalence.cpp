#include "ksym/equivalence.hpp"

#include <cmath>
#include <set>

#include "ksym/polynomial.hpp"
#include "ksym/rng.hpp"

namespace ksym {

std::string to_string(Certificate c) {
    return c == Certificate::Polynomial ? "polynomial" : "sampled";
}

Equivalence equivalent(const Expr& a, const Expr& b, const EquivalenceOptions& opts) {
    auto pa = expr_to_poly(a);
    if (pa) {
        if (auto pb = expr_to_poly(b)) return {*pa == *pb, Certificate::Polynomial};
    }

    std::set<Symbol> syms = free_symbols(a);
    collect_symbols(b, syms);
    std::set<std::string> params = free_params(a);
    collect_params(b, params);

    Rng rng(opts.seed);
    EvalOptions ev;
    ev.guarded = true;
    ev.guard_eps = opts.guard_eps;

    int failures = 0;
    int accepted = 0;
    bool equal = true;
    while (accepted < opts.points) {
        Assignment at;
        for (const auto& s : syms) at.set(s, rng.uniform(opts.lo, opts.hi));
        for (const auto& p : params) at.set_param(p, rng.uniform(opts.lo, opts.hi));
        double va, vb;
        try {
            va = evaluate(a, at, ev);
            vb = evaluate(b, at, ev);
        } catch (const DomainError&) {
            if (++failures >= opts.max_resamples)
                throw DomainError("sampled equivalence: " + std::to_string(failures) +
                                  " consecutive singular sample points");
            continue;
        }
        failures = 0;
        ++accepted;
        if (std::abs(va - vb) > opts.tol * std::max({1.0, std::abs(va), std::abs(vb)})) {
            equal = false;
            break;
        }
    }
    return {equal, Certificate::Sampled};
}

bool is_equivalent(const Expr& a, const Expr& b) { return equivalent(a, b).equal; }

}  // namespace ksym
