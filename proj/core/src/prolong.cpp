#include "ksym/prolong.hpp"

#include "ksym/parallel.hpp"

namespace ksym {

namespace {

std::size_t shifted(const GridSpec& g, std::size_t node, int axis, int delta) {
    auto mi = g.unflatten(node);
    mi[axis] += delta;
    return g.flatten(mi);
}

}  // namespace

double fd_partial(const DiscreteField& f, std::size_t node, int slot, int axis) {
    const GridSpec& g = f.grid();
    auto mi = g.unflatten(node);
    const int N = g.sizes[axis];
    const double h = g.spacings[axis];
    const int i = mi[axis];
    auto v = [&](int delta) { return f.at(shifted(g, node, axis, delta), slot); };
    if (i > 0 && i < N - 1) return (v(1) - v(-1)) / (2 * h);
    if (i == 0) return (-3 * v(0) + 4 * v(1) - v(2)) / (2 * h);
    return (3 * v(0) - 4 * v(-1) + v(-2)) / (2 * h);
}

double fd_second(const DiscreteField& f, std::size_t node, int slot, int axis) {
    const double h = f.grid().spacings[axis];
    auto v = [&](int delta) { return f.at(shifted(f.grid(), node, axis, delta), slot); };
    return (v(1) - 2 * v(0) + v(-1)) / (h * h);
}

double fd_mixed(const DiscreteField& f, std::size_t node, int slot, int axis1, int axis2) {
    const GridSpec& g = f.grid();
    const double h1 = g.spacings[axis1], h2 = g.spacings[axis2];
    auto v = [&](int d1, int d2) {
        auto mi = g.unflatten(node);
        mi[axis1] += d1;
        mi[axis2] += d2;
        return f.at(g.flatten(mi), slot);
    };
    return (v(1, 1) - v(1, -1) - v(-1, 1) + v(-1, -1)) / (4 * h1 * h2);
}

DiscreteField prolong_discrete(const DiscreteField& f, FdScheme, int threads) {
    const Chart& src = f.chart();
    Bundle target = prolonged_bundle(src.bundle());
    Chart dst = make_chart(src.n(), src.k(), target);
    DiscreteField out(dst, f.grid());

    // slot mapping: base coordinates copy through, velocity slots hold
    // partials of their base coordinate.
    const int nsrc = src.size();
    std::vector<int> dst_slot(nsrc);
    for (int c = 0; c < nsrc; ++c) dst_slot[c] = dst.slot_of(src.coord(c));

    struct VelJob {
        int dslot;
        int sslot;
        int axis;  // 0-based
    };
    std::vector<VelJob> jobs;
    for (int c = 0; c < nsrc; ++c)
        for (int a = 1; a <= src.k(); ++a) {
            VarRef vel = velocity_of(src.coord(c), a, target);
            jobs.push_back({dst.slot_of(vel), c, a - 1});
        }

    const std::size_t nodes = f.grid().node_count();
    parallel_for(nodes, threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t node = lo; node < hi; ++node) {
            for (int c = 0; c < nsrc; ++c) out.at(node, dst_slot[c]) = f.at(node, c);
            for (const auto& j : jobs)
                out.at(node, j.dslot) = fd_partial(f, node, j.sslot, j.axis);
        }
    });
    return out;
}

}  // namespace ksym
